#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace harmonic {

// Exact arbitrary-precision integers and rationals. mpq_class keeps values
// canonical (positive denominator, reduced) as long as every construction
// from a numerator/denominator pair goes through make_rat().
using Int = mpz_class;
using Rat = mpq_class;

Rat make_rat(const Int& num, const Int& den);
Rat make_rat(std::int64_t num, std::int64_t den = 1);

Int to_int(std::uint64_t v);
Int to_int(std::int64_t v);

Rat rat_pow(const Rat& base, unsigned exp);
Int int_pow(const Int& base, unsigned exp);

bool is_canonical(const Rat& r);

// "num/den", or "num" when the denominator is one.
std::string to_fraction_string(const Rat& r);
// Short scientific form for messages, e.g. "3.50e-77".
std::string sci_string(const Rat& r);

// Accepts "num/den", integers, and decimals with an optional exponent
// ("0.45", "2.5e-4", "-1E3"). Decimals are converted exactly.
Rat parse_rational(std::string_view text);

using Vec3R = std::array<Rat, 3>;

Vec3R operator+(const Vec3R& a, const Vec3R& b);
Vec3R operator-(const Vec3R& a, const Vec3R& b);
Vec3R operator*(const Rat& s, const Vec3R& v);

}  // namespace harmonic
