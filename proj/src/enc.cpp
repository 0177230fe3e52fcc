#include "harmonic/enc.hpp"

#include <algorithm>
#include <cmath>

#include "harmonic/errors.hpp"

namespace harmonic {

BigFloat::BigFloat(long precision) {
  mpfr_init2(value_, static_cast<mpfr_prec_t>(precision));
  mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, mpfr_get_prec(other.value_));
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this != &other) {
    mpfr_set_prec(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this != &other) mpfr_swap(value_, other.value_);
  return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

Rat BigFloat::to_rat() const {
  if (!mpfr_number_p(value_)) throw PrecisionError("non-finite value in enclosure endpoint");
  Rat r;
  mpfr_get_q(r.get_mpq_t(), value_);
  return r;
}

namespace {

long joint_precision(const Enc& a, const Enc& b) { return std::max(a.precision(), b.precision()); }

void check_precision(long precision) {
  if (precision < MPFR_PREC_MIN || precision > 1L << 20) throw InputError("unsupported precision " + std::to_string(precision));
}

}  // namespace

Enc::Enc(long precision) : lo_(precision), hi_(precision) { check_precision(precision); }

Enc Enc::from_rat(const Rat& r, long precision) {
  Enc e(precision);
  mpfr_set_q(e.lo_.get(), r.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e.hi_.get(), r.get_mpq_t(), MPFR_RNDU);
  return e;
}

Enc Enc::from_int(const Int& v, long precision) {
  Enc e(precision);
  mpfr_set_z(e.lo_.get(), v.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(e.hi_.get(), v.get_mpz_t(), MPFR_RNDU);
  return e;
}

Enc Enc::from_bounds(const Rat& lo, const Rat& hi, long precision) {
  if (lo > hi) throw InputError("enclosure bounds out of order");
  Enc e(precision);
  mpfr_set_q(e.lo_.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(e.hi_.get(), hi.get_mpq_t(), MPFR_RNDU);
  return e;
}

Enc Enc::parse(std::string_view text) {
  auto dots = text.find("..");
  auto at = text.rfind('@');
  if (dots == std::string_view::npos || at == std::string_view::npos || at < dots)
    throw InputError("malformed enclosure '" + std::string(text) + "'");
  std::string lo(text.substr(0, dots));
  std::string hi(text.substr(dots + 2, at - dots - 2));
  long bits = 0;
  try {
    bits = std::stol(std::string(text.substr(at + 1)));
  } catch (const std::exception&) {
    throw InputError("malformed enclosure precision in '" + std::string(text) + "'");
  }
  Enc e(bits);
  if (mpfr_set_str(e.lo_.get(), lo.c_str(), 10, MPFR_RNDD) != 0 && !mpfr_number_p(e.lo_.get()))
    throw InputError("malformed enclosure endpoint '" + lo + "'");
  if (mpfr_set_str(e.hi_.get(), hi.c_str(), 10, MPFR_RNDU) != 0 && !mpfr_number_p(e.hi_.get()))
    throw InputError("malformed enclosure endpoint '" + hi + "'");
  if (mpfr_cmp(e.lo_.get(), e.hi_.get()) > 0) throw InputError("enclosure endpoints out of order");
  return e;
}

Rat Enc::mid_rat() const { return (lo_rat() + hi_rat()) / 2; }

Rat Enc::width() const { return hi_rat() - lo_rat(); }

double Enc::mid_double() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

bool Enc::contains(const Rat& r) const {
  return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_.get(), r.get_mpq_t()) >= 0;
}

bool Enc::contains(const Enc& inner) const {
  return mpfr_cmp(lo_.get(), inner.lo_.get()) <= 0 && mpfr_cmp(hi_.get(), inner.hi_.get()) >= 0;
}

bool Enc::overlaps(const Enc& other) const {
  return mpfr_cmp(lo_.get(), other.hi_.get()) <= 0 && mpfr_cmp(other.lo_.get(), hi_.get()) <= 0;
}

bool Enc::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

bool Enc::certainly_le(const Rat& r) const { return mpfr_cmp_q(hi_.get(), r.get_mpq_t()) <= 0; }
bool Enc::certainly_lt(const Rat& r) const { return mpfr_cmp_q(hi_.get(), r.get_mpq_t()) < 0; }
bool Enc::certainly_ge(const Rat& r) const { return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) >= 0; }
bool Enc::certainly_gt(const Rat& r) const { return mpfr_cmp_q(lo_.get(), r.get_mpq_t()) > 0; }

Enc Enc::operator-() const {
  Enc e(precision());
  mpfr_neg(e.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(e.hi_.get(), lo_.get(), MPFR_RNDU);
  return e;
}

Enc operator+(const Enc& a, const Enc& b) {
  Enc e(joint_precision(a, b));
  mpfr_add(e.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
  mpfr_add(e.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
  return e;
}

Enc operator-(const Enc& a, const Enc& b) {
  Enc e(joint_precision(a, b));
  mpfr_sub(e.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
  mpfr_sub(e.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
  return e;
}

Enc operator*(const Enc& a, const Enc& b) {
  const long prec = joint_precision(a, b);
  Enc e(prec);
  BigFloat t(prec);
  const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), e.lo_.get()) < 0) mpfr_set(e.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_mul(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), e.hi_.get()) > 0) mpfr_set(e.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return e;
}

Enc operator/(const Enc& a, const Enc& b) {
  if (b.contains_zero()) throw PrecisionError("division by an enclosure containing zero");
  const long prec = joint_precision(a, b);
  Enc e(prec);
  BigFloat t(prec);
  const mpfr_srcptr xs[2] = {a.lo_.get(), a.hi_.get()};
  const mpfr_srcptr ys[2] = {b.lo_.get(), b.hi_.get()};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_div(t.get(), x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.get(), e.lo_.get()) < 0) mpfr_set(e.lo_.get(), t.get(), MPFR_RNDD);
      mpfr_div(t.get(), x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.get(), e.hi_.get()) > 0) mpfr_set(e.hi_.get(), t.get(), MPFR_RNDU);
      first = false;
    }
  }
  return e;
}

Enc operator+(const Enc& a, const Rat& b) {
  Enc e(a.precision());
  mpfr_add_q(e.lo_.get(), a.lo_.get(), b.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(e.hi_.get(), a.hi_.get(), b.get_mpq_t(), MPFR_RNDU);
  return e;
}

Enc operator-(const Enc& a, const Rat& b) {
  Enc e(a.precision());
  mpfr_sub_q(e.lo_.get(), a.lo_.get(), b.get_mpq_t(), MPFR_RNDD);
  mpfr_sub_q(e.hi_.get(), a.hi_.get(), b.get_mpq_t(), MPFR_RNDU);
  return e;
}

Enc operator-(const Rat& a, const Enc& b) { return -(b - a); }

Enc operator*(const Rat& a, const Enc& b) {
  Enc e(b.precision());
  if (sgn(a) >= 0) {
    mpfr_mul_q(e.lo_.get(), b.lo_.get(), a.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(e.hi_.get(), b.hi_.get(), a.get_mpq_t(), MPFR_RNDU);
  } else {
    mpfr_mul_q(e.lo_.get(), b.hi_.get(), a.get_mpq_t(), MPFR_RNDD);
    mpfr_mul_q(e.hi_.get(), b.lo_.get(), a.get_mpq_t(), MPFR_RNDU);
  }
  return e;
}

Enc& Enc::operator+=(const Enc& o) { return *this = *this + o; }
Enc& Enc::operator-=(const Enc& o) { return *this = *this - o; }
Enc& Enc::operator+=(const Rat& r) { return *this = *this + r; }

Enc Enc::sqrt() const {
  if (mpfr_sgn(hi_.get()) < 0) throw InputError("square root of a negative enclosure");
  Enc e(precision());
  if (mpfr_sgn(lo_.get()) < 0)
    mpfr_set_zero(e.lo_.get(), 1);
  else
    mpfr_sqrt(e.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_sqrt(e.hi_.get(), hi_.get(), MPFR_RNDU);
  return e;
}

Enc Enc::atan() const {
  Enc e(precision());
  mpfr_atan(e.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_atan(e.hi_.get(), hi_.get(), MPFR_RNDU);
  return e;
}

Enc Enc::widened(const Rat& radius) const {
  if (sgn(radius) < 0) throw InputError("negative widening radius");
  Enc e(precision());
  mpfr_sub_q(e.lo_.get(), lo_.get(), radius.get_mpq_t(), MPFR_RNDD);
  mpfr_add_q(e.hi_.get(), hi_.get(), radius.get_mpq_t(), MPFR_RNDU);
  return e;
}

Enc Enc::hull(const Enc& other) const {
  Enc e(std::max(precision(), other.precision()));
  mpfr_min(e.lo_.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_max(e.hi_.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return e;
}

std::string format_decimal(mpfr_srcptr x, int digits, mpfr_rnd_t rnd) {
  if (mpfr_zero_p(x)) return "0";
  if (!mpfr_number_p(x)) return mpfr_nan_p(x) ? "nan" : (mpfr_sgn(x) > 0 ? "inf" : "-inf");
  mpfr_exp_t exp = 0;
  char* raw = mpfr_get_str(nullptr, &exp, 10, static_cast<size_t>(digits), x, rnd);
  std::string s(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (s.front() == '-') {
    sign = "-";
    s.erase(0, 1);
  }
  std::string out = sign + s.substr(0, 1);
  if (s.size() > 1) out += "." + s.substr(1);
  const long e10 = static_cast<long>(exp) - 1;
  if (e10 != 0) out += "e" + std::to_string(e10);
  return out;
}

std::string Enc::to_string(int digits) const {
  if (digits <= 0) digits = static_cast<int>(std::ceil(static_cast<double>(precision()) * 0.30103)) + 2;
  return format_decimal(lo_.get(), digits, MPFR_RNDD) + ".." + format_decimal(hi_.get(), digits, MPFR_RNDU) + "@" +
         std::to_string(precision());
}

std::string Enc::mid_string(int digits) const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return format_decimal(m.get(), digits, MPFR_RNDN);
}

bool Enc::identical(const Enc& other) const {
  return precision() == other.precision() && mpfr_equal_p(lo_.get(), other.lo_.get()) &&
         mpfr_equal_p(hi_.get(), other.hi_.get());
}

Vec3E to_enc(const Vec3R& v, long precision) {
  return {Enc::from_rat(v[0], precision), Enc::from_rat(v[1], precision), Enc::from_rat(v[2], precision)};
}

Vec3E operator+(const Vec3E& a, const Vec3E& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3E operator-(const Vec3E& a, const Vec3E& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3E operator+(const Vec3E& a, const Vec3R& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3E operator-(const Vec3R& a, const Vec3E& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Rat max_width(const Vec3E& v) {
  Rat w = v[0].width();
  for (int i = 1; i < 3; ++i) w = std::max(w, v[i].width());
  return w;
}

}  // namespace harmonic
