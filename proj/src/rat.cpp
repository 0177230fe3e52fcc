#include "harmonic/rat.hpp"

#include <cctype>
#include <cstdio>

#include "harmonic/errors.hpp"

namespace harmonic {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw InputError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat make_rat(std::int64_t num, std::int64_t den) { return make_rat(to_int(num), to_int(den)); }

Int to_int(std::uint64_t v) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

Int to_int(std::int64_t v) {
  if (v >= 0) return to_int(static_cast<std::uint64_t>(v));
  // -(v + 1) avoids overflow on INT64_MIN.
  Int r = to_int(static_cast<std::uint64_t>(-(v + 1)));
  return -r - 1;
}

Int int_pow(const Int& base, unsigned exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

Rat rat_pow(const Rat& base, unsigned exp) {
  return make_rat(int_pow(base.get_num(), exp), int_pow(base.get_den(), exp));
}

bool is_canonical(const Rat& r) {
  if (r.get_den() <= 0) return false;
  Int g;
  mpz_gcd(g.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return g == 1;
}

std::string sci_string(const Rat& r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", r.get_d());
  return buf;
}

std::string to_fraction_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Int parse_signed_int(std::string_view s) {
  std::string_view body = s;
  if (!body.empty() && (body.front() == '+' || body.front() == '-')) body.remove_prefix(1);
  if (!all_digits(body)) throw InputError("malformed integer '" + std::string(s) + "'");
  std::string text(s.front() == '+' ? s.substr(1) : s);
  return Int(text, 10);
}

}  // namespace

Rat parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InputError("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Int num = parse_signed_int(text.substr(0, slash));
    std::string_view den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw InputError("malformed denominator in '" + std::string(text) + "'");
    Int den(std::string(den_text), 10);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return make_rat(num, den);
  }

  bool negative = false;
  std::string_view rest = text;
  if (rest.front() == '+' || rest.front() == '-') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = rest.find_first_of("eE"); e != std::string_view::npos) {
    Int ex = parse_signed_int(rest.substr(e + 1));
    if (abs(ex) > 100000) throw InputError("exponent out of range in '" + std::string(text) + "'");
    exponent = ex.get_si();
    rest = rest.substr(0, e);
  }
  std::string digits;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view ip = rest.substr(0, dot);
    std::string_view fp = rest.substr(dot + 1);
    if ((ip.empty() && fp.empty()) || (!ip.empty() && !all_digits(ip)) || (!fp.empty() && !all_digits(fp)))
      throw InputError("malformed decimal '" + std::string(text) + "'");
    digits = std::string(ip) + std::string(fp);
    exponent -= static_cast<long>(fp.size());
  } else {
    if (!all_digits(rest)) throw InputError("malformed number '" + std::string(text) + "'");
    digits = std::string(rest);
  }
  Int mant(digits, 10);
  if (negative) mant = -mant;
  Int ten_pow = int_pow(Int(10), static_cast<unsigned>(exponent < 0 ? -exponent : exponent));
  return exponent >= 0 ? make_rat(mant * ten_pow, Int(1)) : make_rat(mant, ten_pow);
}

Vec3R operator+(const Vec3R& a, const Vec3R& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3R operator-(const Vec3R& a, const Vec3R& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3R operator*(const Rat& s, const Vec3R& v) { return {s * v[0], s * v[1], s * v[2]}; }

}  // namespace harmonic
