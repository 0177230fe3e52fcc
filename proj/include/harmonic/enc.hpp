#pragma once

#include <mpfr.h>

#include <array>
#include <string>
#include <string_view>

#include "harmonic/rat.hpp"

namespace harmonic {

inline constexpr long kDefaultPrecision = 192;

// Owning RAII handle around an mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(long precision = kDefaultPrecision);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() noexcept { return value_; }
  mpfr_srcptr get() const noexcept { return value_; }
  long precision() const noexcept { return static_cast<long>(mpfr_get_prec(value_)); }

  // Exact conversion; finite values only.
  Rat to_rat() const;
  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }

 private:
  mpfr_t value_;
};

// Certified enclosure [lo, hi] with outward-rounded endpoints. Every
// arithmetic operation returns an enclosure of the exact result.
class Enc {
 public:
  explicit Enc(long precision = kDefaultPrecision);

  static Enc from_rat(const Rat& r, long precision = kDefaultPrecision);
  static Enc from_int(const Int& v, long precision = kDefaultPrecision);
  static Enc from_bounds(const Rat& lo, const Rat& hi, long precision = kDefaultPrecision);
  // Parses "lo..hi@bits" as produced by to_string().
  static Enc parse(std::string_view text);

  long precision() const noexcept { return lo_.precision(); }
  const BigFloat& lo() const noexcept { return lo_; }
  const BigFloat& hi() const noexcept { return hi_; }

  Rat lo_rat() const { return lo_.to_rat(); }
  Rat hi_rat() const { return hi_.to_rat(); }
  Rat mid_rat() const;
  Rat width() const;
  double mid_double() const;

  bool contains(const Rat& r) const;
  bool contains(const Enc& inner) const;
  bool overlaps(const Enc& other) const;
  bool contains_zero() const;

  // Certain comparisons against an exact bound.
  bool certainly_le(const Rat& r) const;  // hi <= r
  bool certainly_lt(const Rat& r) const;  // hi < r
  bool certainly_ge(const Rat& r) const;  // lo >= r
  bool certainly_gt(const Rat& r) const;  // lo > r

  Enc operator-() const;
  Enc& operator+=(const Enc& o);
  Enc& operator-=(const Enc& o);
  Enc& operator+=(const Rat& r);

  friend Enc operator+(const Enc& a, const Enc& b);
  friend Enc operator-(const Enc& a, const Enc& b);
  friend Enc operator*(const Enc& a, const Enc& b);
  friend Enc operator/(const Enc& a, const Enc& b);
  friend Enc operator+(const Enc& a, const Rat& b);
  friend Enc operator-(const Enc& a, const Rat& b);
  friend Enc operator-(const Rat& a, const Enc& b);
  friend Enc operator*(const Rat& a, const Enc& b);
  friend Enc operator*(const Enc& a, const Rat& b) { return b * a; }

  Enc sqrt() const;
  Enc atan() const;
  // Widen symmetrically by a non-negative exact radius.
  Enc widened(const Rat& radius) const;
  Enc hull(const Enc& other) const;

  // "lo..hi@bits" with endpoints in scientific decimal, rounded outward.
  std::string to_string(int digits = 0) const;
  // Midpoint with the given number of significant digits (round to nearest).
  std::string mid_string(int digits) const;

  // Bitwise identity of both endpoints.
  bool identical(const Enc& other) const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

using Vec3E = std::array<Enc, 3>;

Vec3E to_enc(const Vec3R& v, long precision);
Vec3E operator+(const Vec3E& a, const Vec3E& b);
Vec3E operator-(const Vec3E& a, const Vec3E& b);
Vec3E operator+(const Vec3E& a, const Vec3R& b);
Vec3E operator-(const Vec3R& a, const Vec3E& b);
Rat max_width(const Vec3E& v);

// Decimal rendering of one mpfr value in scientific notation.
std::string format_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd);

}  // namespace harmonic
