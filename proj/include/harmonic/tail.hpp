#pragma once

#include <cstdint>
#include <optional>

#include "harmonic/enc.hpp"
#include "harmonic/rat.hpp"

namespace harmonic {

inline constexpr std::int64_t kModulus = 2310;

// Exact Bernoulli number B_n (B_1 = -1/2 convention).
Rat bernoulli(unsigned n);

// Euler-Maclaurin enclosure of sum_{l >= first} 1/(coef_sq * l^2 + coef_const),
// coef_sq > 0, coef_const >= 0. Boundary corrections up to `order` are exact
// rationals; the remainder is absorbed by widening with twice the first
// omitted correction. Throws PrecisionError if the result is wider than
// max_width.
Enc em_tail_quadratic(const Int& coef_sq, const Int& coef_const, std::uint64_t first, unsigned order,
                      long precision = kDefaultPrecision, const std::optional<Rat>& max_width = std::nullopt);

// sum_{l >= first} 1/(a (l^2 m + 1) + t).
Enc em_tail(std::uint64_t a, unsigned t, std::uint64_t first, unsigned order, long precision = kDefaultPrecision,
            const std::optional<Rat>& max_width = std::nullopt, std::int64_t m = kModulus);

// Rational R >= sum_{l >= k} 1/(l^2 m + 1)^s, k >= 2.
Rat tail_upper_power(unsigned s, std::uint64_t k, std::int64_t m = kModulus);

// Rational R <= sum_{l >= k+1} 1/(l^2 m + 1)^j, k >= 1.
Rat tail_lower_power(unsigned j, std::uint64_t k, std::int64_t m = kModulus);

}  // namespace harmonic
