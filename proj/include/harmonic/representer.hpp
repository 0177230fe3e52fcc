#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "harmonic/constants.hpp"
#include "harmonic/enc.hpp"
#include "harmonic/lemma.hpp"

namespace harmonic {

struct EpsRecord {
  std::uint64_t k = 0;
  std::array<std::uint8_t, 3> eps{};
};

struct RepState {
  std::uint64_t k = 0;
  Vec3E x;
  std::vector<EpsRecord> eps_history;
};

RepState initial_state(std::uint64_t K, const Vec3E& p);

// Relative decision margin: an enclosure straddling the threshold is
// tolerated (and treated as "not allowed") only if its width is at most
// this fraction of c_j/(k^2 m+1)^j.
inline const Rat kDecisionMargin = make_rat(1, 1000);

// One round of the strategy: eps_j = 1 iff x_j + 3 c_j/(k^2 m+1)^j <= q_j
// holds for the whole enclosure. Throws UndecidableThresholdError when the
// enclosure straddles the threshold and is wider than the margin.
RepState alice_step(const RepState& state, const Vec3R& q, const LemmaData& data);

struct RepresentationCertificate {
  Vec3R q;
  std::uint64_t K = 0;
  std::uint64_t k_max = 0;
  long precision = 0;
  Rat C;
  std::vector<EpsRecord> eps_history;  // rounds K .. k_max-1
  std::vector<Int> A_prefix;
  Vec3E x_final;
  Vec3E residual;  // q - x_{k_max}
  Vec3R tail_bound;
};

// Runs rounds K .. k_max-1 from x_K = p. q must lie in the box built from
// (K, p); throws TargetOutsideBoxError, or UndecidableThresholdError when
// membership or a threshold cannot be decided at this precision.
RepresentationCertificate represent(const Vec3R& q, std::uint64_t k_max, long precision, const LemmaData& data,
                                    std::uint64_t K, const Vec3E& p, const Rat& C);

// Same, recomputing p and doubling the precision on undecidable thresholds
// up to max_precision.
RepresentationCertificate represent_auto(const Vec3R& q, std::uint64_t k_max, const LemmaData& data,
                                         std::uint64_t K, const Rat& C, PSettings settings,
                                         long max_precision = 4096);

// Elements a (k^2 m+1) contributed by the recorded rounds, sorted.
// Throws DuplicateElementError if two rounds produce the same integer.
std::vector<Int> emit_A(const RepresentationCertificate& cert, const LemmaData& data);

// Recomputes every recorded round exactly and checks
// |x_{k+1,j} - x_{k,j} - eps_{k,j} c_j/(k^2 m+1)^j| <= 3C/(k^2 m+1)^4.
// Returns the first round violating it, if any.
std::optional<std::uint64_t> first_step_bound_violation(const RepresentationCertificate& cert,
                                                        const LemmaData& data);

// |residual_j| <= tail_bound_j for every coordinate, certainly.
bool residual_within_bound(const RepresentationCertificate& cert);

struct CrosscheckResult {
  Vec3E lhs;  // M^{-1} x_{k_max}
  Vec3E rhs;  // sum over A of uf_vec + remaining T-tail
  Rat combined_width;
};

// Checks M^{-1} x_{k_max} = sum_{n in A} uf_vec(n) + sum_{l >= k_max} sum_{a in T} uf_vec(a(l^2 m+1)).
// A is rebuilt from the eps history. Throws MismatchError if the two
// enclosures are disjoint.
CrosscheckResult crosscheck(const RepresentationCertificate& cert, long precision, const LemmaData& data);

}  // namespace harmonic
