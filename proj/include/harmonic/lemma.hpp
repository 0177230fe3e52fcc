#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "harmonic/linalg.hpp"
#include "harmonic/rat.hpp"

namespace harmonic {

// One move of the game: adding the denominators of add_set and removing
// those of remove_set shifts the transformed point by about c / n^j along
// coordinate j. Both sets are multiples of `scale`.
struct MoveFamily {
  int j = 1;
  std::vector<std::int64_t> add_set;
  std::vector<std::int64_t> remove_set;
  std::int64_t scale = 1;
  Rat c;
};

struct LemmaData {
  Mat3R M;
  std::array<MoveFamily, 3> families;
  std::int64_t m = 0;
  std::vector<std::int64_t> U;  // sorted union of all six sets

  const MoveFamily& family(int j) const { return families.at(static_cast<std::size_t>(j - 1)); }
};

// The fixed matrix and sets (c_j are computed, not hard-coded).
LemmaData build_lemma_data();

// Assemble data from arbitrary sets, deriving U, m and c_j the same way
// build_lemma_data does. Used for perturbed and synthetic inputs.
LemmaData make_lemma_data(const Mat3R& M, std::array<MoveFamily, 3> families);

// c_j from the sets: coefficient of n^-j in coordinate j of the move.
Rat family_constant(const Mat3R& M, const MoveFamily& f);

// Product of the distinct primes dividing any element.
std::int64_t radical(const std::vector<std::int64_t>& values);

bool pairwise_disjoint(const LemmaData& data);

// sum over the set of 1/a^p; `divide_by` rescales each element first.
Rat power_sum(const std::vector<std::int64_t>& set, unsigned p, std::int64_t divide_by = 1);

struct IdentityCheck {
  std::string name;
  Rat lhs;
  Rat rhs;
  bool expect_equal = true;
  bool ok = false;
};

struct IdentityReport {
  std::vector<IdentityCheck> entries;

  bool all_ok() const;
  std::vector<const IdentityCheck*> failures() const;
};

// Checks the six power-sum identities, the derived matching/non-matching
// sums per family, the closed forms of c_j, disjointness and det M. Never
// throws on a violated identity; failures are listed in the report.
IdentityReport verify_power_sum_identities(const LemmaData& data);

// (1/n, 1/(n+1), 1/(n+2)).
Vec3R uf_vec(const Int& n);

// (sum_{S_j} - sum_{T_j}) M uf_vec(a n), exact.
Vec3R move_vec(const LemmaData& data, int j, const Int& n);

// move_vec(j, n) - c_j / n^j e_j, exact.
Vec3R error_vec(const LemmaData& data, int j, const Int& n);

// lim n^4 error_vec(j, n), from the n^-4 coefficient of the expansion of
// 1/(a n + t).
Vec3R asymptotic_error_limit(const LemmaData& data, int j);

// Largest |coordinate| of the limits over all j.
Rat asymptotic_error_max(const LemmaData& data);

// For n > N the deviation n^4 err_i(n) - limit_i equals
// slope_i / n + r(n) with |r(n)| <= curvature_i / n^2.
struct TailExpansion {
  Vec3R limit;
  Vec3R slope;
  Vec3R curvature;
};
TailExpansion tail_expansion(const LemmaData& data, int j);

struct CViolation {
  int j = 0;
  int coord = 0;  // 1-based
  std::uint64_t n = 0;
  Rat scaled_error;  // n^4 |err|
};

struct CCertificate {
  Rat C;
  std::uint64_t n_verified = 0;
  bool expansion_ok = false;  // orders n^-1..n^-3 match c_j e_j exactly
  bool scan_ok = false;
  bool tail_ok = false;
  std::optional<CViolation> first_violation;
  // Worst value of |L + D u| + E u^2 at u = 1/(N+1) over all (j, coord),
  // and its gap to C (negative means the tail check failed).
  Rat tail_worst;
  Rat tail_gap;
  std::array<TailExpansion, 3> expansions;
  Rat max_scanned;  // max over the scan of n^4 |err|

  bool certified() const { return expansion_ok && scan_ok && tail_ok; }
};

// Proves |error_vec(j, n)_i| <= C / n^4 for all n >= 1: exact scan up to
// n_verified, and a convexity bound on the two-term tail expansion beyond.
CCertificate certify_C(const LemmaData& data, const Rat& C, std::uint64_t n_verified);

}  // namespace harmonic
