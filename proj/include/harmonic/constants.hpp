#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmonic/enc.hpp"
#include "harmonic/lemma.hpp"

namespace harmonic {

inline constexpr std::uint64_t kDefaultBruteWindow = 10000;

// Outcome of the two K-conditions at one k, per coordinate j:
//   cond17: sum_{l>=k} 3C/(l^2 m+1)^4 < c_j/(k^2 m+1)^j
//   cond18: sum_{l>k} c_j/(l^2 m+1)^j > 4 c_j/(k^2 m+1)^j
struct PropKResult {
  std::uint64_t k = 0;
  std::array<bool, 3> cond17{};
  std::array<bool, 3> cond18{};

  bool all() const;
};

// Each sum is a certified partial sum over `window` terms plus a rational
// tail bound (tail_upper_power / tail_lower_power).
PropKResult check_propK(std::uint64_t k, const Rat& C, const LemmaData& data,
                        std::uint64_t window = kDefaultBruteWindow, long precision = kDefaultPrecision);

// Rational inequalities that imply both conditions for every k >= k_star.
// Their lhs/rhs ratios are decreasing in k:
//   cond17: (k^(2j) / (k-1)^7)' < 0 since 2j < 7,
//   cond18: ((k+1)^(2j-1) / k^(2j))' < 0.
struct CrudeClosing {
  std::uint64_t k_star = 0;
  std::array<Rat, 3> lhs17, rhs17, lhs18, rhs18;
};

CrudeClosing crude_closing_at(std::uint64_t k, const Rat& C, const LemmaData& data);
bool crude_holds(const CrudeClosing& c);

struct KCertificate {
  std::uint64_t K = 0;
  std::uint64_t k_star = 0;
  Rat C;
  std::uint64_t window = 0;
  // Rows for K-1 (the first failing k, when K > 2) through k_star.
  std::vector<PropKResult> table;
  CrudeClosing crude;
  std::string monotonicity_note;
};

// Smallest K for which both conditions hold for every k >= K. Throws
// NotFoundError when k_star or K exceeds search_limit.
KCertificate find_K(const Rat& C, const LemmaData& data, std::uint64_t search_limit,
                    std::uint64_t window = kDefaultBruteWindow);

struct PSettings {
  std::uint64_t l_direct = 10000;
  unsigned order = 8;
  long precision = 256;
  std::optional<Rat> max_width = make_rat(Int(1), int_pow(Int(10), 35));
};

struct PEnclosure {
  Vec3E p;
  // M^{-1} p: the three raw sums over a in T_1 u T_2 u T_3, l >= K, of
  // 1/(a(l^2 m+1)+t), t = 0, 1, 2.
  Vec3E column_sums;
  std::uint64_t K = 0;
  PSettings settings;
  Rat width;
};

// Throws PrecisionError if the width bound cannot be met.
PEnclosure compute_p(std::uint64_t K, const LemmaData& data, const PSettings& settings = {});

// Column sums truncated to l in [K, L), for monotonicity checks.
Vec3E partial_column_sums(std::uint64_t K, std::uint64_t L, const LemmaData& data, long precision);

enum class Membership { inside, outside, undecidable };

struct BoxSpec {
  Vec3E p;
  Vec3R lower;  // c_j / (K^2 m + 1)^j
  Vec3R upper;  // 2 lower
  std::uint64_t K = 0;
  Int base;  // K^2 m + 1

  Vec3E center() const;
  Vec3R side() const { return upper - lower; }
  Membership classify(const Vec3R& q) const;
  // q_j = mid(p_j) + (1 + u_j) lower_j, with u_j in [0, 1].
  Vec3R point_at_fraction(const Vec3R& u) const;
};

BoxSpec box_Q(std::uint64_t K, const Vec3E& p, const LemmaData& data);

// True iff the values a (k^2 m + 1), a in U, 1 <= k <= k_max are distinct.
bool uniqueness_scan(const std::vector<std::int64_t>& U, std::int64_t m, std::uint64_t k_max);
bool uniqueness_scan(const LemmaData& data, std::uint64_t k_max);

}  // namespace harmonic
