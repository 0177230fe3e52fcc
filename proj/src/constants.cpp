#include "harmonic/constants.hpp"

#include <algorithm>

#include "harmonic/errors.hpp"
#include "harmonic/tail.hpp"

namespace harmonic {

namespace {

Int shifted_square(std::uint64_t k, std::int64_t m) {
  const Int kk = to_int(k);
  return kk * kk * to_int(m) + 1;
}

std::vector<std::int64_t> all_remove_elements(const LemmaData& data) {
  std::vector<std::int64_t> out;
  for (const auto& f : data.families) out.insert(out.end(), f.remove_set.begin(), f.remove_set.end());
  return out;
}

}  // namespace

bool PropKResult::all() const {
  for (int j = 0; j < 3; ++j)
    if (!cond17[j] || !cond18[j]) return false;
  return true;
}

PropKResult check_propK(std::uint64_t k, const Rat& C, const LemmaData& data, std::uint64_t window,
                        long precision) {
  if (k < 2) throw InputError("check_propK: k must be at least 2");
  if (window < 1) throw InputError("check_propK: window must be positive");
  const std::int64_t m = data.m;

  // Partial sums of 1/(l^2 m+1)^s over l in [k, k+window].
  std::array<Enc, 5> partial{Enc::from_int(0, precision), Enc::from_int(0, precision), Enc::from_int(0, precision),
                             Enc::from_int(0, precision), Enc::from_int(0, precision)};
  for (std::uint64_t l = k; l <= k + window; ++l) {
    const Int n = shifted_square(l, m);
    Int pw = n;
    for (unsigned s = 1; s <= 4; ++s) {
      if (s > 1) pw *= n;
      // cond18 sums start at k+1.
      if (s == 4 || l > k) partial[s] += Enc::from_rat(Rat(Int(1), pw), precision);
    }
  }

  PropKResult r;
  r.k = k;
  const Int nk = shifted_square(k, m);
  const Enc sum4_upper = partial[4] + tail_upper_power(4, k + window + 1, m);
  for (int j = 1; j <= 3; ++j) {
    const Rat& c = data.family(j).c;
    const Rat main = c / Rat(int_pow(nk, static_cast<unsigned>(j)));
    r.cond17[j - 1] = (3 * C * sum4_upper).certainly_lt(main);
    const Enc sum_lower = c * (partial[j] + tail_lower_power(static_cast<unsigned>(j), k + window, m));
    r.cond18[j - 1] = sum_lower.certainly_gt(4 * main);
  }
  return r;
}

CrudeClosing crude_closing_at(std::uint64_t k, const Rat& C, const LemmaData& data) {
  if (k < 2) throw InputError("crude closing needs k >= 2");
  const std::int64_t m = data.m;
  CrudeClosing cc;
  cc.k_star = k;
  const Int kk = to_int(k);
  for (int j = 1; j <= 3; ++j) {
    const unsigned uj = static_cast<unsigned>(j);
    const Rat& c = data.family(j).c;
    // (k^2 m + 1)^j <= ((m+1) k^2)^j
    cc.lhs17[j - 1] = 3 * C * tail_upper_power(4, k, m);
    cc.rhs17[j - 1] = c / Rat(int_pow(to_int(m + 1), uj) * int_pow(kk, 2 * uj));
    // (k^2 m + 1)^j > (m k^2)^j
    cc.lhs18[j - 1] = make_rat(Int(4), int_pow(to_int(m), uj) * int_pow(kk, 2 * uj));
    cc.rhs18[j - 1] = tail_lower_power(uj, k, m);
  }
  return cc;
}

bool crude_holds(const CrudeClosing& c) {
  for (int j = 0; j < 3; ++j)
    if (!(c.lhs17[j] < c.rhs17[j]) || !(c.lhs18[j] < c.rhs18[j])) return false;
  return true;
}

KCertificate find_K(const Rat& C, const LemmaData& data, std::uint64_t search_limit, std::uint64_t window) {
  if (C <= 0) throw InputError("find_K: C must be positive");
  KCertificate cert;
  cert.C = C;
  cert.window = window;

  std::uint64_t k_star = 2;
  for (;; ++k_star) {
    if (k_star > search_limit)
      throw NotFoundError("find_K: crude closing inequality does not hold for any k <= " +
                          std::to_string(search_limit));
    cert.crude = crude_closing_at(k_star, C, data);
    if (crude_holds(cert.crude)) break;
  }
  cert.k_star = k_star;
  cert.monotonicity_note =
      "for k >= k_star: 3C tail_upper_power(4,k) < c_j/((m+1)^j k^(2j)) and 4/(m^j k^(2j)) < tail_lower_power(j,k); "
      "ratios k^(2j)/(k-1)^7 and (k+1)^(2j-1)/k^(2j) are decreasing for k >= 2";

  // Walk down from k_star until a k fails.
  std::vector<PropKResult> rows;
  std::uint64_t K = 2;
  for (std::uint64_t k = k_star; k >= 2; --k) {
    PropKResult row = check_propK(k, C, data, window);
    rows.push_back(row);
    if (!row.all()) {
      K = k + 1;
      break;
    }
  }
  std::reverse(rows.begin(), rows.end());
  cert.table = std::move(rows);
  cert.K = K;
  if (K > search_limit)
    throw NotFoundError("find_K: smallest certifiable K is " + std::to_string(K) + ", above the search limit " +
                        std::to_string(search_limit));
  return cert;
}

Vec3E partial_column_sums(std::uint64_t K, std::uint64_t L, const LemmaData& data, long precision) {
  const auto T = all_remove_elements(data);
  Vec3E cols{Enc::from_int(0, precision), Enc::from_int(0, precision), Enc::from_int(0, precision)};
  for (std::uint64_t l = K; l < L; ++l) {
    const Int base = shifted_square(l, data.m);
    for (auto a : T) {
      const Int n = base * a;
      for (int t = 0; t < 3; ++t) cols[t] += Enc::from_rat(Rat(Int(1), Int(n + t)), precision);
    }
  }
  return cols;
}

PEnclosure compute_p(std::uint64_t K, const LemmaData& data, const PSettings& settings) {
  if (K < 2) throw InputError("compute_p: K must be at least 2");
  if (settings.l_direct <= K) throw InputError("compute_p: l_direct must exceed K");
  const long prec = settings.precision;

  Vec3E cols = partial_column_sums(K, settings.l_direct, data, prec);
  for (auto a : all_remove_elements(data))
    for (unsigned t = 0; t < 3; ++t)
      cols[t] += em_tail(static_cast<std::uint64_t>(a), t, settings.l_direct, settings.order, prec, std::nullopt, data.m);

  PEnclosure out;
  out.column_sums = cols;
  out.p = data.M * cols;
  out.K = K;
  out.settings = settings;
  out.width = max_width(out.p);
  if (settings.max_width && out.width > *settings.max_width)
    throw PrecisionError("compute_p: enclosure width " + sci_string(out.width) +
                         " exceeds the requested bound at " + std::to_string(prec) + " bits");
  return out;
}

Vec3E BoxSpec::center() const {
  const Vec3R mid = make_rat(1, 2) * (lower + upper);
  return p + mid;
}

Membership BoxSpec::classify(const Vec3R& q) const {
  bool undecided = false;
  for (int j = 0; j < 3; ++j) {
    // q - p must lie in [lower, upper].
    const Enc offset = q[j] - p[j];
    if (offset.certainly_ge(lower[j]) && offset.certainly_le(upper[j])) continue;
    if (offset.certainly_lt(lower[j]) || offset.certainly_gt(upper[j])) return Membership::outside;
    undecided = true;
  }
  return undecided ? Membership::undecidable : Membership::inside;
}

Vec3R BoxSpec::point_at_fraction(const Vec3R& u) const {
  Vec3R q;
  for (int j = 0; j < 3; ++j) {
    if (u[j] < 0 || u[j] > 1) throw InputError("box fraction must lie in [0, 1]");
    q[j] = p[j].mid_rat() + (1 + u[j]) * lower[j];
  }
  return q;
}

BoxSpec box_Q(std::uint64_t K, const Vec3E& p, const LemmaData& data) {
  BoxSpec box;
  box.K = K;
  box.p = p;
  box.base = shifted_square(K, data.m);
  for (int j = 1; j <= 3; ++j) {
    box.lower[j - 1] = data.family(j).c / Rat(int_pow(box.base, static_cast<unsigned>(j)));
    box.upper[j - 1] = 2 * box.lower[j - 1];
  }
  return box;
}

bool uniqueness_scan(const std::vector<std::int64_t>& U, std::int64_t m, std::uint64_t k_max) {
  if (k_max < 1) throw InputError("uniqueness_scan: k_max must be positive");
  std::vector<Int> values;
  values.reserve(U.size() * k_max);
  for (std::uint64_t k = 1; k <= k_max; ++k) {
    const Int base = shifted_square(k, m);
    for (auto a : U) values.push_back(base * a);
  }
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) == values.end();
}

bool uniqueness_scan(const LemmaData& data, std::uint64_t k_max) { return uniqueness_scan(data.U, data.m, k_max); }

}  // namespace harmonic
