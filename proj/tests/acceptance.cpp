// Acceptance run: one PASS/FAIL line per criterion, followed by details.
// Exit status is the number of failed criteria (0 when all pass).

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "harmonic/certifier.hpp"
#include "harmonic/errors.hpp"
#include "harmonic/games.hpp"
#include "harmonic/json_io.hpp"
#include "harmonic/representer.hpp"
#include "harmonic/tail.hpp"

using namespace harmonic;

namespace {

Rat pow10_neg(unsigned e) { return make_rat(Int(1), int_pow(Int(10), e)); }

// Tolerances and limits.
const double kLemmaSeconds = 1.0;
const double kCSeconds = 120.0;
const double kBallSeconds = 600.0;
const unsigned kCenterWidthExp = 34;    // width <= 1e-34
const unsigned kRadiusExp = 24;         // faces radius >= 1e-24
const unsigned kResidualExp = 10;       // |q - x_2000| <= 1e-10
const unsigned kCrosscheckExp = 25;     // crosscheck width <= 1e-25
const unsigned kGreedyExp = 6;          // greedy residual < 1e-6
const unsigned kGameDistanceExp = 6;    // game #3 final distance <= 1e-6
const std::size_t kMinEpsCount = 10;
const std::uint64_t kExpectedK = 14;

// Reference center coordinates, times 1e-6.
const char* const kReferenceCenter[3] = {"2.58842922071730660744793282484", "2.58842919367011667177209233699",
                                       "2.58842916662292797961469594496"};

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    notes.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    pass = pass && ok;
  }
  void info(const std::string& what) { notes.push_back("     " + what); }
};

std::string sci(const Rat& r) { return sci_string(r); }

const LemmaData& data() {
  static const LemmaData d = build_lemma_data();
  return d;
}

Rat error_C() { return asymptotic_error_max(data()); }

// --- 1 ---
Outcome lemma_identities() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const LemmaData d = build_lemma_data();
  const IdentityReport r = verify_power_sum_identities(d);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(r.all_ok(), "all " + std::to_string(r.entries.size()) + " identity checks hold exactly");
  o.require(d.family(1).c == make_rat(1, 180), "c1 = " + to_fraction_string(d.family(1).c));
  o.require(d.family(2).c == make_rat(1, 348480), "c2 = " + to_fraction_string(d.family(2).c));
  o.require(d.family(3).c == make_rat(1, 1029000), "c3 = " + to_fraction_string(d.family(3).c));
  o.require(d.M.determinant() == -2, "det M = " + d.M.determinant().get_str());
  o.require(secs < kLemmaSeconds, "runtime " + std::to_string(secs) + " s < 1 s");
  return o;
}

// --- 2 ---
Outcome error_constant() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const Rat C = asymptotic_error_max(data());
  o.require(C == make_rat(8833, 100776960000LL), "max |lim n^4 err| = " + to_fraction_string(C));
  const CCertificate c = certify_C(data(), C, 10000);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(c.certified(), "certify_C(C, 1e4): expansion " + std::string(c.expansion_ok ? "ok" : "bad") +
                               ", scan " + (c.scan_ok ? "ok" : "bad") + ", tail gap " + sci(c.tail_gap));
  o.require(secs < kCSeconds, "runtime " + std::to_string(secs) + " s < 120 s");
  return o;
}

// --- 3 ---
Outcome k_certification() {
  Outcome o;
  std::vector<std::uint64_t> failing;
  std::string detail;
  for (std::uint64_t k = 14; k <= 100; ++k) {
    const PropKResult r = check_propK(k, error_C(), data());
    if (!r.all()) {
      failing.push_back(k);
      if (detail.empty()) {
        for (int j = 0; j < 3; ++j) {
          if (!r.cond17[j]) detail += " upper-tail j=" + std::to_string(j + 1);
          if (!r.cond18[j]) detail += " lower-tail j=" + std::to_string(j + 1);
        }
      }
    }
  }
  std::string list;
  for (auto k : failing) list += " " + std::to_string(k);
  o.require(failing.empty(), "check_propK on [14, 100]" + (failing.empty() ? std::string(" all pass")
                                                                            : ", failing k:" + list));
  if (!failing.empty()) o.info("at k=" + std::to_string(failing.front()) + " failing:" + detail);
  const KCertificate kc = find_K(error_C(), data(), 10000);
  o.require(kc.K == kExpectedK, "find_K = " + std::to_string(kc.K) + " (expected 14), k_star = " +
                                  std::to_string(kc.k_star));
  // Independent reason: sum_{l>14} (l^2 m+1)^-3 < 4 (14^2 m+1)^-3 from the
  // exact first term and an external 40-digit value of the full tail.
  const Rat from14 = parse_rational("3.593855316482391395625772579126401559681e-17");
  const Rat first = Rat(Int(1), int_pow(Int(452761), 3));
  o.info("external check: sum_{l>14}/(4 * first term) = " +
         Enc::from_rat((from14 - first) / (4 * first), 64).mid_string(6) +
         " (the condition needs > 1)");
  return o;
}

// Center of M^{-1} Q when p drops the "+1" in a(l^2 m+1), keeping the box offsets.
Vec3E center_without_plus_one(const BoxSpec& box, long prec) {
  const std::uint64_t L = 10000;
  Vec3E cols{Enc::from_int(0, prec), Enc::from_int(0, prec), Enc::from_int(0, prec)};
  for (const auto& f : data().families)
    for (auto a : f.remove_set)
      for (unsigned t = 0; t < 3; ++t) {
        const Int A = to_int(a) * to_int(data().m);
        for (std::uint64_t l = kExpectedK; l < L; ++l)
          cols[t] += Enc::from_rat(Rat(Int(1), A * to_int(l) * to_int(l) + t), prec);
        cols[t] += em_tail_quadratic(A, Int(t), L, 8, prec);
      }
  const Vec3R mid = make_rat(1, 2) * (box.lower + box.upper);
  return cols + mat3_invert(data().M) * mid;
}

// --- 4 ---
Outcome ball_reproduction() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  PipelineConfig cfg;
  cfg.precision = 256;
  cfg.K_override = kExpectedK;
  const FullCertificate fc = full_certificate(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.info("run at K = 14 (certified K is " + std::to_string(fc.k_cert.K) + ")");

  const Rat w = max_width(fc.faces.center);
  o.require(w <= pow10_neg(kCenterWidthExp), "center width " + sci(w) + " <= 1e-34");
  for (int i = 0; i < 3; ++i) {
    const Rat ref = parse_rational(kReferenceCenter[i]) * pow10_neg(6);
    const Enc& c = fc.faces.center[i];
    const Rat rel = abs(c.mid_rat() - ref) / ref;
    o.require(c.contains(ref), "center[" + std::to_string(i + 1) + "] = " +
                                       (c * Enc::from_int(1000000, 256)).mid_string(30) +
                                       "e-6 contains the reference value (rel. gap " + sci(rel) + ")");
  }
  o.require(fc.faces.radius_lower_bound >= pow10_neg(kRadiusExp),
            "faces radius " + sci(fc.faces.radius_lower_bound) + " >= 1e-24");
  o.info("ellipsoid radius " + sci(fc.ellipsoid.radius_lower_bound));
  o.require(secs < kBallSeconds, "runtime " + std::to_string(secs) + " s < 600 s");

  const Vec3E alt = center_without_plus_one(fc.box, 256);
  Rat worst = 0;
  for (int i = 0; i < 3; ++i) {
    const Rat ref = parse_rational(kReferenceCenter[i]) * pow10_neg(6);
    worst = std::max(worst, Rat(abs(alt[i].mid_rat() - ref) / ref));
  }
  o.info("diagnostic: summing p over a*l^2*m (no +1) matches the reference center to rel. " + sci(worst));
  return o;
}

// --- 5 ---
Outcome representation() {
  Outcome o;
  const Rat C = error_C();
  const PEnclosure p = compute_p(kExpectedK, data());
  const BoxSpec box = box_Q(kExpectedK, p.p, data());
  const Vec3R q = box.point_at_fraction({make_rat(1, 2), make_rat(1, 2), make_rat(1, 2)});
  o.info("K = 14, q = box center");

  const RepresentationCertificate r2000 = represent(q, 2000, 256, data(), kExpectedK, p.p, C);
  Rat res = 0;
  for (const auto& e : r2000.residual) res = std::max({res, Rat(abs(e.lo_rat())), Rat(abs(e.hi_rat()))});
  o.require(res <= pow10_neg(kResidualExp), "|q - x_2000| <= " + sci(res) + " <= 1e-10");
  o.require(residual_within_bound(r2000), "residual within the certified tail bound");

  const std::vector<Int>& A = r2000.A_prefix;
  bool increasing = true;
  for (std::size_t i = 1; i < A.size(); ++i) increasing = increasing && A[i - 1] < A[i];
  o.require(increasing, "emit_A strictly increasing, |A| = " + std::to_string(A.size()));
  o.require(!A.empty() && A.front() == 21732528, "first element " + (A.empty() ? std::string("-") : A.front().get_str()));

  const RepresentationCertificate r500 = represent(q, 500, 256, data(), kExpectedK, p.p, C);
  try {
    const CrosscheckResult x = crosscheck(r500, 256, data());
    o.require(x.combined_width <= pow10_neg(kCrosscheckExp), "crosscheck at k_max=500 holds, width " +
                                                                   sci(x.combined_width));
  } catch (const MismatchError& e) {
    o.require(false, std::string("crosscheck: ") + e.what());
  }

  const RepresentationCertificate r3000 = represent(q, 3001, 256, data(), kExpectedK, p.p, C);
  for (int j = 0; j < 3; ++j) {
    std::size_t ones = 0;
    for (const auto& r : r3000.eps_history) ones += r.eps[j];
    const std::size_t zeros = r3000.eps_history.size() - ones;
    o.require(ones >= kMinEpsCount && zeros >= kMinEpsCount, "coordinate " + std::to_string(j + 1) + ": eps=1 x" +
                                                                  std::to_string(ones) + ", eps=0 x" +
                                                                  std::to_string(zeros) + " on [14, 3000]");
  }
  return o;
}

// --- 6 ---
Outcome greedy() {
  Outcome o;
  const GreedyResult one = greedy_subseries(Rat(1), harmonic_series(), 1000000);
  o.require(one.indices == std::vector<std::uint64_t>{1} && one.residual == 0, "target 1 -> A = {1}");
  const GreedyResult half = greedy_subseries(make_rat(1, 2), harmonic_series(), 1000000);
  o.require(half.indices == std::vector<std::uint64_t>{2} && half.residual == 0, "target 1/2 -> A = {2}");
  const GreedyResult g45 = greedy_subseries(parse_rational("0.45"), harmonic_series(), 1000000);
  std::string idx;
  for (auto n : g45.indices) idx += " " + std::to_string(n);
  o.require(g45.residual < pow10_neg(kGreedyExp), "target 0.45 -> A =" + idx + ", residual " + sci(g45.residual));
  const GreedyResult odd = greedy_subseries(Rat(1), odd_harmonic_series(), 1000000);
  o.require(odd.residual < pow10_neg(kGreedyExp), "odd denominators, target 1: residual " + sci(odd.residual));
  return o;
}

// --- 7 ---
Outcome game_three() {
  Outcome o;
  const GameConfig c = game_preset("g3");
  const std::vector<Rat> targets{parse_rational("5e-5"), parse_rational("1e-4"), parse_rational("2.5e-4")};
  std::vector<AdversarySpec> adversaries{{AdversaryKind::zero, 0}, {AdversaryKind::overshooter, 0}};
  for (std::uint64_t s = 1; s <= 10; ++s) adversaries.push_back({AdversaryKind::seeded_random, s});

  Rat worst_distance = 0;
  std::uint64_t cauchy_violations = 0;
  Rat worst_ratio = 0;
  for (const auto& target : targets) {
    for (const auto& adv : adversaries) {
      const Trajectory t = run_game(c, {target}, adv, 10000);
      worst_distance = std::max(worst_distance, distance_upper(t.final_state(), {target}));
      // |x_{n+m} - x_n| over all m >= 0 via suffix extrema.
      const auto& st = t.steps;
      Rat hi = st.back().state[0].hi_rat();
      Rat lo = st.back().state[0].lo_rat();
      for (std::size_t i = st.size(); i-- > 0;) {
        hi = std::max(hi, st[i].state[0].hi_rat());
        lo = std::min(lo, st[i].state[0].lo_rat());
        const Rat spread = std::max(hi - st[i].state[0].lo_rat(), st[i].state[0].hi_rat() - lo);
        const Rat bound = make_rat(Int(101), st[i].n - 1);
        if (spread > bound) ++cauchy_violations;
        worst_ratio = std::max(worst_ratio, Rat(spread / bound));
      }
    }
  }
  o.require(worst_distance <= pow10_neg(kGameDistanceExp),
            "36 runs, worst final distance " + sci(worst_distance) + " <= 1e-6");
  o.require(cauchy_violations == 0, "Cauchy bound 101/(n-1): " + std::to_string(cauchy_violations) +
                                        " violations, worst ratio " + sci(worst_ratio));
  return o;
}

// --- 8 ---
Outcome uniqueness() {
  Outcome o;
  o.require(uniqueness_scan(data(), 200), "a(k^2 m+1) distinct for a in U, k <= 200");
  return o;
}

// --- 9 ---
Rat random_rat(std::mt19937_64& gen) {
  const auto num = static_cast<std::int64_t>(gen() >> 23) - (std::int64_t{1} << 40);
  const auto den = static_cast<std::int64_t>(gen() >> 24) + 1;
  return make_rat(num, den);
}

Outcome properties() {
  Outcome o;
  std::mt19937_64 gen(1);
  std::size_t bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const Rat a = random_rat(gen), b = random_rat(gen);
    const long prec = 64 + static_cast<long>(gen() % 200);
    const Enc ea = Enc::from_rat(a, prec), eb = Enc::from_rat(b, prec);
    bool ok = (ea + eb).contains(a + b) && (ea - eb).contains(a - b) && (ea * eb).contains(a * b);
    if (b != 0) ok = ok && (ea / eb).contains(a / b);
    if (!ok) ++bad;
  }
  o.require(bad == 0, "enclosure containment on 1e4 random cases, " + std::to_string(bad) + " failures");

  bool closed = true;
  bool zeros = true;
  for (int i = 1; i <= 1000; ++i) {
    const Int n(i);
    const Vec3R v = data().M * uf_vec(n);
    const Int cube = n * (n + 1) * (n + 2);
    closed = closed && v[1] == make_rat(2 * (n + 3), cube) && v[2] == make_rat(Int(2), cube);
    for (int j = 1; j <= 3; ++j) zeros = zeros && error_vec(data(), j, n)[0] == 0;
  }
  o.require(closed, "(Mv)_2 = 2(n+3)/(n(n+1)(n+2)), (Mv)_3 = 2/(n(n+1)(n+2)) for n = 1..1000");
  o.require(zeros, "first coordinate of every error vector is 0 for n = 1..1000");

  const std::string a = to_json(full_certificate(PipelineConfig{})).dump(2);
  const std::string b = to_json(full_certificate(PipelineConfig{})).dump(2);
  o.require(a == b, "two certificate runs are byte-identical (" + std::to_string(a.size()) + " bytes)");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{{"lemma identities", lemma_identities},
                                        {"error constant", error_constant},
                                        {"K certification", k_certification},
                                        {"ball reproduction", ball_reproduction},
                                        {"representation run", representation},
                                        {"greedy game", greedy},
                                        {"game #3 robustness", game_three},
                                        {"uniqueness", uniqueness},
                                        {"property suites", properties}};
  int failed = 0;
  std::ostringstream details;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = criteria[i].run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].name << " (" << secs << " s)"
              << std::endl;
    details << "\n" << i + 1 << ". " << criteria[i].name << "\n";
    for (const auto& n : o.notes) details << "   " << n << "\n";
  }
  std::cout << "\n" << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n" << details.str();
  return failed;
}
