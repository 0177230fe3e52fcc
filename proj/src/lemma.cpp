#include "harmonic/lemma.hpp"

#include <algorithm>
#include <set>

#include "harmonic/errors.hpp"

namespace harmonic {

namespace {

Mat3R standard_matrix() {
  return Mat3R({{{Rat(1), Rat(0), Rat(0)}, {Rat(3), Rat(-4), Rat(1)}, {Rat(1), Rat(-2), Rat(1)}}});
}

std::vector<std::int64_t> scaled(std::int64_t factor, std::initializer_list<std::int64_t> base) {
  std::vector<std::int64_t> out;
  for (auto b : base) out.push_back(factor * b);
  return out;
}

// sum_a sigma_a sum_t M[row][t] (-t)^r / a^(r+1): coefficient of n^-(r+1) in
// coordinate `row` of the move.
Rat expansion_coefficient(const Mat3R& M, const MoveFamily& f, int row, unsigned r) {
  Rat row_weight = 0;
  for (int t = 0; t < 3; ++t) {
    Rat w = M(row, t);
    if (r > 0) w *= rat_pow(Rat(-t), r);
    row_weight += w;
  }
  if (row_weight == 0) return 0;
  return row_weight * (power_sum(f.add_set, r + 1) - power_sum(f.remove_set, r + 1));
}

std::string display_sum(const std::vector<std::int64_t>& set, std::int64_t scale, unsigned p) {
  std::string out;
  for (auto a : set) {
    if (!out.empty()) out += " + ";
    out += "1/" + std::to_string(a / scale);
    if (p > 1) out += "^" + std::to_string(p);
  }
  return out;
}

}  // namespace

Rat power_sum(const std::vector<std::int64_t>& set, unsigned p, std::int64_t divide_by) {
  Rat acc = 0;
  for (auto a : set) {
    if (a % divide_by != 0) throw InputError("set element not divisible by its scale");
    acc += make_rat(Int(1), int_pow(to_int(a / divide_by), p));
  }
  return acc;
}

Rat family_constant(const Mat3R& M, const MoveFamily& f) {
  return expansion_coefficient(M, f, f.j - 1, static_cast<unsigned>(f.j - 1));
}

std::int64_t radical(const std::vector<std::int64_t>& values) {
  std::set<std::int64_t> primes;
  for (auto v : values) {
    for (std::int64_t d = 2; d * d <= v; ++d) {
      if (v % d == 0) {
        primes.insert(d);
        while (v % d == 0) v /= d;
      }
    }
    if (v > 1) primes.insert(v);
  }
  std::int64_t r = 1;
  for (auto p : primes) r *= p;
  return r;
}

LemmaData make_lemma_data(const Mat3R& M, std::array<MoveFamily, 3> families) {
  LemmaData data;
  data.M = M;
  std::vector<std::int64_t> all;
  for (auto& f : families) {
    f.c = family_constant(M, f);
    all.insert(all.end(), f.add_set.begin(), f.add_set.end());
    all.insert(all.end(), f.remove_set.begin(), f.remove_set.end());
  }
  data.families = std::move(families);
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  data.U = all;
  data.m = radical(all);
  return data;
}

LemmaData build_lemma_data() {
  std::array<MoveFamily, 3> fams;
  fams[0] = {1, {45, 72, 144, 160, 432, 480}, {48, 60, 120, 720, 1440, 4320}, 1, Rat(0)};
  fams[1] = {2, scaled(11, {16, 20, 240}), scaled(11, {15, 24, 120}), 11, Rat(0)};
  fams[2] = {3, scaled(7, {10, 30, 60}), scaled(7, {12, 15}), 7, Rat(0)};
  return make_lemma_data(standard_matrix(), std::move(fams));
}

bool pairwise_disjoint(const LemmaData& data) {
  std::vector<std::int64_t> all;
  for (const auto& f : data.families) {
    all.insert(all.end(), f.add_set.begin(), f.add_set.end());
    all.insert(all.end(), f.remove_set.begin(), f.remove_set.end());
  }
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

bool IdentityReport::all_ok() const {
  return std::all_of(entries.begin(), entries.end(), [](const IdentityCheck& e) { return e.ok; });
}

std::vector<const IdentityCheck*> IdentityReport::failures() const {
  std::vector<const IdentityCheck*> out;
  for (const auto& e : entries)
    if (!e.ok) out.push_back(&e);
  return out;
}

IdentityReport verify_power_sum_identities(const LemmaData& data) {
  IdentityReport report;
  auto add = [&](std::string name, Rat lhs, Rat rhs, bool expect_equal) {
    const bool equal = lhs == rhs;
    report.entries.push_back({std::move(name), std::move(lhs), std::move(rhs), expect_equal, equal == expect_equal});
  };
  auto identity = [&](int j, unsigned p, bool expect_equal) {
    const MoveFamily& f = data.family(j);
    std::string name = display_sum(f.add_set, f.scale, p) + (expect_equal ? " = " : " != ") +
                       display_sum(f.remove_set, f.scale, p);
    add(std::move(name), power_sum(f.add_set, p, f.scale), power_sum(f.remove_set, p, f.scale), expect_equal);
  };

  // The six displayed identities.
  identity(3, 1, true);
  identity(3, 2, true);
  identity(2, 1, true);
  identity(2, 3, true);
  identity(1, 2, true);
  identity(1, 3, true);
  // The power that must not match, per family.
  identity(1, 1, false);
  identity(2, 2, false);
  identity(3, 3, false);

  // Closed forms of c_j against the published values.
  const MoveFamily& f1 = data.family(1);
  const MoveFamily& f2 = data.family(2);
  const MoveFamily& f3 = data.family(3);
  add("c1 = sum_{S1} 1/a - sum_{T1} 1/a", power_sum(f1.add_set, 1) - power_sum(f1.remove_set, 1), make_rat(1, 180),
      true);
  add("c2 = 2/11^2 (sum_{S2/11} 1/b^2 - sum_{T2/11} 1/b^2)",
      make_rat(2, f2.scale * f2.scale) * (power_sum(f2.add_set, 2, f2.scale) - power_sum(f2.remove_set, 2, f2.scale)),
      make_rat(1, 348480), true);
  add("c3 = 2/7^3 (sum_{S3/7} 1/b^3 - sum_{T3/7} 1/b^3)",
      make_rat(2, f3.scale * f3.scale * f3.scale) *
          (power_sum(f3.add_set, 3, f3.scale) - power_sum(f3.remove_set, 3, f3.scale)),
      make_rat(1, 1029000), true);
  for (int j = 1; j <= 3; ++j)
    add("c" + std::to_string(j) + " from the expansion coefficient", data.family(j).c,
        j == 1 ? make_rat(1, 180) : j == 2 ? make_rat(1, 348480) : make_rat(1, 1029000), true);

  add("det M", data.M.determinant(), Rat(-2), true);
  add("m = radical(U)", Rat(data.m), Rat(2310), true);

  std::vector<std::int64_t> all;
  for (const auto& f : data.families) {
    all.insert(all.end(), f.add_set.begin(), f.add_set.end());
    all.insert(all.end(), f.remove_set.begin(), f.remove_set.end());
  }
  add("|S1|+...+|T3| = |U| (pairwise disjoint)", Rat(static_cast<long>(all.size())),
      Rat(static_cast<long>(data.U.size())), true);
  return report;
}

Vec3R uf_vec(const Int& n) {
  if (n < 1) throw InputError("uf_vec: n must be positive");
  return {make_rat(Int(1), n), make_rat(Int(1), n + 1), make_rat(Int(1), n + 2)};
}

Vec3R move_vec(const LemmaData& data, int j, const Int& n) {
  if (n < 1) throw InputError("move_vec: n must be positive");
  const MoveFamily& f = data.family(j);
  Vec3R cols{Rat(0), Rat(0), Rat(0)};
  for (auto a : f.add_set) cols = cols + uf_vec(a * n);
  for (auto a : f.remove_set) cols = cols - uf_vec(a * n);
  return data.M * cols;
}

Vec3R error_vec(const LemmaData& data, int j, const Int& n) {
  Vec3R v = move_vec(data, j, n);
  v[j - 1] -= data.family(j).c / rat_pow(Rat(n), static_cast<unsigned>(j));
  return v;
}

Vec3R asymptotic_error_limit(const LemmaData& data, int j) {
  const MoveFamily& f = data.family(j);
  Vec3R out;
  for (int i = 0; i < 3; ++i) out[i] = expansion_coefficient(data.M, f, i, 3);
  return out;
}

Rat asymptotic_error_max(const LemmaData& data) {
  Rat best = 0;
  for (int j = 1; j <= 3; ++j)
    for (const auto& v : asymptotic_error_limit(data, j)) best = std::max(best, Rat(abs(v)));
  return best;
}

TailExpansion tail_expansion(const LemmaData& data, int j) {
  const MoveFamily& f = data.family(j);
  TailExpansion te;
  te.limit = asymptotic_error_limit(data, j);
  for (int i = 0; i < 3; ++i) {
    Rat slope = 0, curvature = 0;
    for (int t = 1; t < 3; ++t) {
      const Rat w = data.M(i, t);
      if (w == 0) continue;
      const Rat t4 = rat_pow(Rat(t), 4);
      const Rat t5 = rat_pow(Rat(t), 5);
      for (auto a : f.add_set) {
        slope += w * t4 / rat_pow(Rat(a), 5);
        curvature += abs(w) * t5 / rat_pow(Rat(a), 6);
      }
      for (auto a : f.remove_set) {
        slope -= w * t4 / rat_pow(Rat(a), 5);
        curvature += abs(w) * t5 / rat_pow(Rat(a), 6);
      }
    }
    te.slope[i] = slope;
    te.curvature[i] = curvature;
  }
  return te;
}

CCertificate certify_C(const LemmaData& data, const Rat& C, std::uint64_t n_verified) {
  if (C <= 0) throw InputError("certify_C: C must be positive");
  if (n_verified < 1) throw InputError("certify_C: need at least one verified n");
  CCertificate cert;
  cert.C = C;
  cert.n_verified = n_verified;

  // Orders n^-1 .. n^-3 must reduce to c_j e_j exactly, otherwise the tail
  // expansion below does not describe err.
  cert.expansion_ok = true;
  for (int j = 1; j <= 3; ++j) {
    const MoveFamily& f = data.family(j);
    for (int i = 0; i < 3; ++i)
      for (unsigned r = 0; r < 3; ++r) {
        const Rat expected = (i == j - 1 && r == static_cast<unsigned>(j - 1)) ? f.c : Rat(0);
        if (expansion_coefficient(data.M, f, i, r) != expected) cert.expansion_ok = false;
      }
  }

  cert.scan_ok = true;
  cert.max_scanned = 0;
  for (std::uint64_t n = 1; n <= n_verified; ++n) {
    const Int nn = to_int(n);
    const Rat n4 = Rat(nn * nn * nn * nn);
    for (int j = 1; j <= 3; ++j) {
      const Vec3R e = error_vec(data, j, nn);
      for (int i = 0; i < 3; ++i) {
        const Rat scaled_err = abs(e[i]) * n4;
        if (scaled_err > cert.max_scanned) cert.max_scanned = scaled_err;
        if (scaled_err > C && !cert.first_violation) {
          cert.first_violation = CViolation{j, i + 1, n, scaled_err};
          cert.scan_ok = false;
        }
      }
    }
    if (!cert.scan_ok) break;
  }

  // For u = 1/n in (0, u0], |L + D u| + E u^2 is convex, so its maximum is
  // attained at u = 0 or u = u0.
  const Rat u0 = make_rat(Int(1), to_int(n_verified + 1));
  cert.tail_ok = true;
  cert.tail_worst = 0;
  for (int j = 1; j <= 3; ++j) {
    cert.expansions[j - 1] = tail_expansion(data, j);
    const TailExpansion& te = cert.expansions[j - 1];
    for (int i = 0; i < 3; ++i) {
      const Rat at_zero = abs(te.limit[i]);
      const Rat at_u0 = abs(te.limit[i] + te.slope[i] * u0) + te.curvature[i] * u0 * u0;
      const Rat worst = std::max(at_zero, at_u0);
      if (worst > cert.tail_worst) cert.tail_worst = worst;
    }
  }
  cert.tail_gap = C - cert.tail_worst;
  cert.tail_ok = cert.tail_gap >= 0;
  return cert;
}

}  // namespace harmonic
