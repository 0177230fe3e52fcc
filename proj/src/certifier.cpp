#include "harmonic/certifier.hpp"

#include <algorithm>
#include <functional>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

Rat sqrt_upper(const Rat& x, long precision) { return Enc::from_rat(x, precision).sqrt().hi_rat(); }

BallCertificate ball_common(BallMethod method, const BoxSpec& Q, const Mat3R& M) {
  BallCertificate b;
  b.method = method;
  b.center = mat3_invert(M) * Q.center();
  return b;
}

// Returns true if some side is zero; the radius is then 0.
bool degenerate(const BoxSpec& Q, BallCertificate& b) {
  const Vec3R side = Q.side();
  for (int j = 0; j < 3; ++j) {
    if (side[j] < 0) throw InputError("box has a negative side");
    if (side[j] == 0) {
      b.radius_lower_bound = 0;
      b.warnings.push_back("degenerate box: side " + std::to_string(j + 1) + " is zero, radius is 0");
      return true;
    }
  }
  return false;
}

}  // namespace

std::string to_string(BallMethod m) { return m == BallMethod::ellipsoid ? "ellipsoid" : "faces"; }

BallCertificate inscribed_ball_ellipsoid(const BoxSpec& Q, const Mat3R& M, long precision) {
  BallCertificate b = ball_common(BallMethod::ellipsoid, Q, M);
  if (degenerate(Q, b)) return b;
  const Vec3R side = Q.side();
  const Rat half_min = std::min({side[0], side[1], side[2]}) / 2;
  const Rat sigma_sq_hi = sigma_max_sq(M, make_rat(1, 1000000), precision).hi_rat();
  b.radius_lower_bound = half_min / sqrt_upper(sigma_sq_hi, precision);
  return b;
}

BallCertificate inscribed_ball_faces(const BoxSpec& Q, const Mat3R& M, long precision) {
  BallCertificate b = ball_common(BallMethod::faces, Q, M);
  if (degenerate(Q, b)) return b;
  const Vec3R side = Q.side();
  std::optional<Rat> best;
  for (int j = 0; j < 3; ++j) {
    Rat row_sq = 0;
    for (int t = 0; t < 3; ++t) row_sq += M(j, t) * M(j, t);
    if (row_sq == 0) throw SingularMatrixError("zero row in M");
    const Rat r = side[j] / 2 / sqrt_upper(row_sq, precision);
    if (!best || r < *best) best = r;
  }
  b.radius_lower_bound = *best;
  return b;
}

int exit_code_for(const std::exception& e) {
  if (const auto* s = dynamic_cast<const StageError*>(&e)) return s->exit_code();
  if (dynamic_cast<const CertificationError*>(&e)) return 2;
  if (dynamic_cast<const PrecisionError*>(&e)) return 3;
  if (dynamic_cast<const InputError*>(&e)) return 4;
  return 1;
}

FullCertificate full_certificate(const PipelineConfig& config) {
  if (config.precision < 64) throw StageError("config", "precision must be at least 64 bits", 4);
  auto stage = [](const std::string& name, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const StageError&) {
      throw;
    } catch (const std::exception& e) {
      throw StageError(name, e.what(), exit_code_for(e));
    }
  };

  FullCertificate out;
  out.precision = config.precision;
  const LemmaData data = build_lemma_data();

  stage("identities", [&] {
    out.identities = verify_power_sum_identities(data);
    if (!out.identities.all_ok())
      throw CertificationError("identity '" + out.identities.failures().front()->name + "' does not hold");
  });

  stage("C", [&] {
    const Rat C = config.C_override ? *config.C_override : asymptotic_error_max(data);
    out.c_cert = certify_C(data, C, config.n_verify);
    if (!out.c_cert.certified()) throw CertificationError("error constant " + C.get_str() + " not certified");
  });

  stage("K", [&] {
    out.k_cert = find_K(out.c_cert.C, data, config.search_limit, config.window);
    out.K = config.K_override ? *config.K_override : out.k_cert.K;
    out.K_certified = out.K >= out.k_cert.K;
  });

  stage("p", [&] {
    PSettings s;
    s.l_direct = config.l_direct;
    s.order = config.em_order;
    s.precision = config.precision;
    out.p = compute_p(out.K, data, s);
  });

  stage("box", [&] { out.box = box_Q(out.K, out.p.p, data); });

  stage("ball", [&] {
    out.ellipsoid = inscribed_ball_ellipsoid(out.box, data.M, config.precision);
    out.faces = inscribed_ball_faces(out.box, data.M, config.precision);
    const Rat w = max_width(out.faces.center);
    if (w > config.center_max_width)
      throw PrecisionError("center enclosure width " + sci_string(w) + " exceeds the configured bound");
  });
  return out;
}

}  // namespace harmonic
