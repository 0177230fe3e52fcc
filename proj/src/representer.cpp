#include "harmonic/representer.hpp"

#include <algorithm>

#include "harmonic/errors.hpp"
#include "harmonic/tail.hpp"

namespace harmonic {

namespace {

Int round_base(std::uint64_t k, std::int64_t m) {
  const Int kk = to_int(k);
  return kk * kk * to_int(m) + 1;
}

}  // namespace

RepState initial_state(std::uint64_t K, const Vec3E& p) { return RepState{K, p, {}}; }

RepState alice_step(const RepState& state, const Vec3R& q, const LemmaData& data) {
  const Int n = round_base(state.k, data.m);
  EpsRecord rec{state.k, {0, 0, 0}};
  for (int j = 1; j <= 3; ++j) {
    const Rat step = data.family(j).c / Rat(int_pow(n, static_cast<unsigned>(j)));
    const Rat bound = q[j - 1] - 3 * step;
    const Enc& xj = state.x[j - 1];
    if (xj.certainly_le(bound)) {
      rec.eps[j - 1] = 1;
    } else if (!xj.certainly_gt(bound) && xj.width() > kDecisionMargin * step) {
      throw UndecidableThresholdError("threshold at round k=" + std::to_string(state.k) + ", coordinate " +
                                      std::to_string(j) + " cannot be decided at " +
                                      std::to_string(xj.precision()) + " bits");
    }
  }
  RepState next{state.k + 1, state.x, state.eps_history};
  Vec3R delta{Rat(0), Rat(0), Rat(0)};
  for (int j = 1; j <= 3; ++j)
    if (rec.eps[j - 1]) delta = delta + move_vec(data, j, n);
  next.x = next.x + delta;
  next.eps_history.push_back(rec);
  return next;
}

RepresentationCertificate represent(const Vec3R& q, std::uint64_t k_max, long precision, const LemmaData& data,
                                    std::uint64_t K, const Vec3E& p, const Rat& C) {
  if (k_max < K) throw InputError("represent: k_max must be at least K");
  const BoxSpec box = box_Q(K, p, data);
  switch (box.classify(q)) {
    case Membership::outside:
      throw TargetOutsideBoxError("target is outside the box Q");
    case Membership::undecidable:
      throw UndecidableThresholdError("box membership of the target cannot be decided at this precision");
    case Membership::inside:
      break;
  }

  // Work at the requested precision even if p was computed more finely.
  Vec3E x0 = p;
  for (auto& e : x0) e = e + Enc::from_int(0, precision);
  RepState state = initial_state(K, x0);
  // The history is moved out of each step to avoid quadratic copying.
  std::vector<EpsRecord> history;
  history.reserve(k_max - K);
  while (state.k < k_max) {
    RepState next = alice_step(RepState{state.k, state.x, {}}, q, data);
    history.push_back(next.eps_history.back());
    state = RepState{next.k, std::move(next.x), {}};
  }

  RepresentationCertificate cert;
  cert.q = q;
  cert.K = K;
  cert.k_max = k_max;
  cert.precision = precision;
  cert.C = C;
  cert.eps_history = std::move(history);
  cert.x_final = state.x;
  cert.residual = q - state.x;
  cert.A_prefix = emit_A(cert, data);

  for (int j = 1; j <= 3; ++j) {
    std::uint64_t last_case2 = K;
    std::uint64_t after_last_case1 = K;
    for (const auto& r : cert.eps_history) {
      if (r.eps[j - 1] == 0)
        last_case2 = r.k;
      else
        after_last_case1 = r.k + 1;
    }
    const Rat& c = data.family(j).c;
    const Rat below = 3 * c / Rat(int_pow(round_base(last_case2, data.m), static_cast<unsigned>(j))) +
                      3 * C * tail_upper_power(4, last_case2, data.m);
    const Rat above = 3 * C * tail_upper_power(4, std::max<std::uint64_t>(after_last_case1, 2), data.m);
    cert.tail_bound[j - 1] = std::max(below, above);
  }
  return cert;
}

RepresentationCertificate represent_auto(const Vec3R& q, std::uint64_t k_max, const LemmaData& data,
                                         std::uint64_t K, const Rat& C, PSettings settings, long max_precision) {
  for (;;) {
    try {
      const PEnclosure p = compute_p(K, data, settings);
      return represent(q, k_max, settings.precision, data, K, p.p, C);
    } catch (const UndecidableThresholdError&) {
      if (settings.precision * 2 > max_precision) throw;
      settings.precision *= 2;
      if (settings.max_width) settings.max_width = std::nullopt;
    }
  }
}

std::vector<Int> emit_A(const RepresentationCertificate& cert, const LemmaData& data) {
  std::vector<Int> out;
  for (const auto& r : cert.eps_history) {
    const Int base = round_base(r.k, data.m);
    for (int j = 1; j <= 3; ++j) {
      const MoveFamily& f = data.family(j);
      const auto& set = r.eps[j - 1] ? f.add_set : f.remove_set;
      for (auto a : set) out.push_back(base * a);
    }
  }
  std::sort(out.begin(), out.end());
  if (auto dup = std::adjacent_find(out.begin(), out.end()); dup != out.end())
    throw DuplicateElementError("emit_A: integer " + dup->get_str() + " produced twice");
  return out;
}

std::optional<std::uint64_t> first_step_bound_violation(const RepresentationCertificate& cert,
                                                        const LemmaData& data) {
  for (const auto& r : cert.eps_history) {
    const Int n = round_base(r.k, data.m);
    const Rat allowance = 3 * cert.C / Rat(int_pow(n, 4));
    Vec3R delta{Rat(0), Rat(0), Rat(0)};
    for (int j = 1; j <= 3; ++j)
      if (r.eps[j - 1]) delta = delta + move_vec(data, j, n);
    for (int j = 1; j <= 3; ++j) {
      Rat dev = delta[j - 1];
      if (r.eps[j - 1]) dev -= data.family(j).c / Rat(int_pow(n, static_cast<unsigned>(j)));
      if (abs(dev) > allowance) return r.k;
    }
  }
  return std::nullopt;
}

bool residual_within_bound(const RepresentationCertificate& cert) {
  for (int j = 0; j < 3; ++j) {
    if (!cert.residual[j].certainly_le(cert.tail_bound[j])) return false;
    if (!cert.residual[j].certainly_ge(-cert.tail_bound[j])) return false;
  }
  return true;
}

CrosscheckResult crosscheck(const RepresentationCertificate& cert, long precision, const LemmaData& data) {
  const Mat3R inv = mat3_invert(data.M);
  CrosscheckResult res;
  res.lhs = inv * cert.x_final;

  Vec3E rhs{Enc::from_int(0, precision), Enc::from_int(0, precision), Enc::from_int(0, precision)};
  for (const auto& n : emit_A(cert, data))
    for (int t = 0; t < 3; ++t) rhs[t] += Enc::from_rat(Rat(Int(1), Int(n + t)), precision);

  // Rounds k >= k_max still hold their T-elements, as in the definition of p.
  const std::uint64_t first = std::max<std::uint64_t>(cert.k_max, 2);
  const std::uint64_t l_direct = std::max<std::uint64_t>(10000, 2 * first);
  rhs = rhs + partial_column_sums(first, l_direct, data, precision);
  for (const auto& f : data.families)
    for (auto a : f.remove_set)
      for (unsigned t = 0; t < 3; ++t)
        rhs[t] += em_tail(static_cast<std::uint64_t>(a), t, l_direct, 8, precision, std::nullopt, data.m);
  res.rhs = rhs;

  res.combined_width = 0;
  for (int i = 0; i < 3; ++i) {
    const Rat w = res.lhs[i].width() + res.rhs[i].width();
    if (w > res.combined_width) res.combined_width = w;
    if (!res.lhs[i].overlaps(res.rhs[i]))
      throw MismatchError("crosscheck: coordinate " + std::to_string(i + 1) +
                          " of M^-1 x differs from the subseries sum (lhs " + res.lhs[i].to_string(25) + ", rhs " +
                          res.rhs[i].to_string(25) + ")");
  }
  return res;
}

}  // namespace harmonic
