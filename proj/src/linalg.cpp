#include "harmonic/linalg.hpp"

#include "harmonic/errors.hpp"

namespace harmonic {

Mat3R Mat3R::identity() { return diag(1, 1, 1); }

Mat3R Mat3R::diag(const Rat& d0, const Rat& d1, const Rat& d2) {
  Mat3R m;
  m.a_[0][0] = d0;
  m.a_[1][1] = d1;
  m.a_[2][2] = d2;
  return m;
}

Rat Mat3R::determinant() const {
  const auto& a = a_;
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Rat Mat3R::trace() const { return a_[0][0] + a_[1][1] + a_[2][2]; }

Mat3R Mat3R::transpose() const {
  Mat3R t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.a_[i][j] = a_[j][i];
  return t;
}

Mat3R operator*(const Mat3R& x, const Mat3R& y) {
  Mat3R r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r.a_[i][j] += x.a_[i][k] * y.a_[k][j];
  return r;
}

Vec3R operator*(const Mat3R& m, const Vec3R& v) {
  Vec3R r;
  for (int i = 0; i < 3; ++i) r[i] = m.a_[i][0] * v[0] + m.a_[i][1] * v[1] + m.a_[i][2] * v[2];
  return r;
}

Vec3E operator*(const Mat3R& m, const Vec3E& v) {
  const long prec = std::max({v[0].precision(), v[1].precision(), v[2].precision()});
  Vec3E r{Enc(prec), Enc(prec), Enc(prec)};
  for (int i = 0; i < 3; ++i) {
    Enc acc = Enc::from_int(0, prec);
    for (int j = 0; j < 3; ++j)
      if (m.a_[i][j] != 0) acc += m.a_[i][j] * v[j];
    r[i] = acc;
  }
  return r;
}

Mat3R mat3_invert(const Mat3R& m) {
  const Rat det = m.determinant();
  if (det == 0) throw SingularMatrixError("matrix is singular (det = 0)");
  Mat3R inv;
  // Adjugate: inv(i, j) = cofactor(j, i) / det.
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv(i, j) = (m(r0, c0) * m(r1, c1) - m(r0, c1) * m(r1, c0)) / det;
    }
  }
  return inv;
}

int RatPoly::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i)
    if (coeffs[i] != 0) return i;
  return -1;
}

Rat RatPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

RatPoly RatPoly::derivative() const {
  RatPoly d;
  for (std::size_t i = 1; i < coeffs.size(); ++i) d.coeffs.push_back(coeffs[i] * static_cast<long>(i));
  return d;
}

namespace {

void trim(RatPoly& p) {
  while (!p.coeffs.empty() && p.coeffs.back() == 0) p.coeffs.pop_back();
}

RatPoly remainder(RatPoly num, const RatPoly& den) {
  trim(num);
  const int dd = den.degree();
  const Rat& lead = den.coeffs[dd];
  while (num.degree() >= dd) {
    const int nd = num.degree();
    const Rat factor = num.coeffs[nd] / lead;
    for (int i = 0; i <= dd; ++i) num.coeffs[nd - dd + i] -= factor * den.coeffs[i];
    trim(num);
  }
  return num;
}

int sign_changes(const std::vector<RatPoly>& seq, const Rat& x) {
  int changes = 0;
  int prev = 0;
  for (const auto& p : seq) {
    const int s = sgn(p.eval(x));
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace

RatPoly characteristic_polynomial(const Mat3R& a) {
  // x^3 - tr(A) x^2 + (sum of principal 2x2 minors) x - det(A)
  const Rat minors = a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0) + a(0, 0) * a(2, 2) - a(0, 2) * a(2, 0) +
                     a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1);
  return RatPoly{{-a.determinant(), minors, -a.trace(), Rat(1)}};
}

int sturm_count(const RatPoly& p, const Rat& lo, const Rat& hi) {
  std::vector<RatPoly> seq{p, p.derivative()};
  trim(seq[0]);
  trim(seq[1]);
  while (seq.back().degree() > 0) {
    RatPoly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.degree() < 0) break;
    for (auto& c : r.coeffs) c = -c;
    seq.push_back(std::move(r));
  }
  return sign_changes(seq, lo) - sign_changes(seq, hi);
}

EigenBracket largest_gram_eigenvalue(const Mat3R& m, const Rat& tol) {
  if (tol <= 0) throw InputError("eigenvalue tolerance must be positive");
  const Mat3R gram = m.transpose() * m;
  const RatPoly chi = characteristic_polynomial(gram);
  // Gram matrices are PSD, so every eigenvalue lies in [0, trace].
  Rat lo = 0;
  Rat hi = gram.trace();
  if (hi == 0) return {0, 0};
  // Invariant: the largest root lies in (lo, hi].
  lo = -1;
  while (hi - lo > tol) {
    const Rat mid = (lo + hi) / 2;
    if (sturm_count(chi, mid, hi) > 0)
      lo = mid;
    else
      hi = mid;
  }
  if (lo < 0) lo = 0;
  return {lo, hi};
}

Enc sigma_max_sq(const Mat3R& m, const Rat& tol, long precision) {
  const EigenBracket b = largest_gram_eigenvalue(m, tol);
  return Enc::from_bounds(b.lo, b.hi, precision);
}

}  // namespace harmonic
