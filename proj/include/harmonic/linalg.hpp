#pragma once

#include <array>
#include <vector>

#include "harmonic/enc.hpp"
#include "harmonic/rat.hpp"

namespace harmonic {

// 3x3 matrix of exact rationals, row-major.
class Mat3R {
 public:
  Mat3R() = default;
  explicit Mat3R(const std::array<std::array<Rat, 3>, 3>& rows) : a_(rows) {}

  static Mat3R identity();
  static Mat3R diag(const Rat& d0, const Rat& d1, const Rat& d2);

  Rat& operator()(int i, int j) { return a_[i][j]; }
  const Rat& operator()(int i, int j) const { return a_[i][j]; }

  Rat determinant() const;
  Rat trace() const;
  Mat3R transpose() const;

  friend Mat3R operator*(const Mat3R& x, const Mat3R& y);
  friend Vec3R operator*(const Mat3R& m, const Vec3R& v);
  friend Vec3E operator*(const Mat3R& m, const Vec3E& v);
  friend bool operator==(const Mat3R& x, const Mat3R& y) = default;

 private:
  std::array<std::array<Rat, 3>, 3> a_{};
};

// Throws SingularMatrixError when det = 0.
Mat3R mat3_invert(const Mat3R& m);

// Dense polynomial with rational coefficients, coeffs[i] multiplies x^i.
struct RatPoly {
  std::vector<Rat> coeffs;

  int degree() const;
  Rat eval(const Rat& x) const;
  RatPoly derivative() const;
};

// det(x I - A) for a 3x3 matrix.
RatPoly characteristic_polynomial(const Mat3R& a);

// Number of distinct real roots of p in the half-open interval (lo, hi],
// via a Sturm sequence evaluated exactly.
int sturm_count(const RatPoly& p, const Rat& lo, const Rat& hi);

// Exact rational bracket [lo, hi] of the largest eigenvalue of M^T M with
// hi - lo <= tol.
struct EigenBracket {
  Rat lo;
  Rat hi;
};
EigenBracket largest_gram_eigenvalue(const Mat3R& m, const Rat& tol);

// sigma_max(M)^2 as a certified enclosure of width <= tol.
Enc sigma_max_sq(const Mat3R& m, const Rat& tol, long precision = kDefaultPrecision);

}  // namespace harmonic
