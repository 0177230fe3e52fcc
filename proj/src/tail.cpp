#include "harmonic/tail.hpp"

#include <vector>

#include "harmonic/errors.hpp"

namespace harmonic {

Rat bernoulli(unsigned n) {
  std::vector<Rat> b(n + 1);
  b[0] = 1;
  for (unsigned k = 1; k <= n; ++k) {
    // sum_{i=0}^{k} C(k+1, i) B_i = 0
    Rat acc = 0;
    Int binom = 1;  // C(k+1, i)
    for (unsigned i = 0; i < k; ++i) {
      acc += binom * b[i];
      binom = binom * (k + 1 - i) / (i + 1);
    }
    b[k] = -acc / Rat(binom);
  }
  return b[n];
}

Enc em_tail_quadratic(const Int& coef_sq, const Int& coef_const, std::uint64_t first, unsigned order, long precision,
                      const std::optional<Rat>& max_width) {
  if (coef_sq <= 0 || coef_const < 0) throw InputError("em_tail: coefficients out of range");
  if (first == 0) throw InputError("em_tail: first index must be positive");

  const Int L = to_int(first);
  const Int D = coef_sq * L * L + coef_const;
  const Int E = 2 * coef_sq * L;

  // Taylor coefficients g_n of f(L + h) = 1 / (D + E h + A h^2).
  const unsigned n_terms = 2 * order + 2;
  std::vector<Rat> g(n_terms + 1);
  g[0] = make_rat(Int(1), D);
  for (unsigned n = 1; n <= n_terms; ++n) {
    Rat next = E * g[n - 1];
    if (n >= 2) next += coef_sq * g[n - 2];
    g[n] = -next / D;
  }

  // Boundary terms: f(L)/2 - sum_k B_{2k}/(2k)! f^{(2k-1)}(L), and
  // f^{(n)}(L) / n! = g_n.
  Rat boundary = g[0] / 2;
  for (unsigned k = 1; k <= order; ++k) boundary -= bernoulli(2 * k) / (2 * k) * g[2 * k - 1];
  Rat omitted = bernoulli(2 * order + 2) / (2 * order + 2) * g[2 * order + 1];
  if (omitted < 0) omitted = -omitted;

  // Integral from L to infinity: atan(s) / (s A L) with s = sqrt(B / A) / L.
  Enc integral(precision);
  if (coef_const == 0) {
    integral = Enc::from_rat(make_rat(Int(1), coef_sq * L), precision);
  } else {
    const Enc s = Enc::from_rat(make_rat(coef_const, coef_sq * L * L), precision).sqrt();
    integral = s.atan() / s * Enc::from_rat(make_rat(Int(1), coef_sq * L), precision);
  }

  Enc result = (integral + boundary).widened(2 * omitted);
  if (max_width && result.width() > *max_width)
    throw PrecisionError("em_tail: enclosure width exceeds the requested bound (raise order, first index or precision)");
  return result;
}

Enc em_tail(std::uint64_t a, unsigned t, std::uint64_t first, unsigned order, long precision,
            const std::optional<Rat>& max_width, std::int64_t m) {
  if (a == 0) throw InputError("em_tail: a must be positive");
  if (first < 2) throw InputError("em_tail: first index must be at least 2");
  const Int A = to_int(a);
  return em_tail_quadratic(A * to_int(m), A + t, first, order, precision, max_width);
}

Rat tail_upper_power(unsigned s, std::uint64_t k, std::int64_t m) {
  if (s < 1 || k < 2) throw InputError("tail_upper_power: need s >= 1 and k >= 2");
  return make_rat(Int(1), int_pow(to_int(m), s) * (2 * s - 1) * int_pow(to_int(k - 1), 2 * s - 1));
}

Rat tail_lower_power(unsigned j, std::uint64_t k, std::int64_t m) {
  if (j < 1 || k < 1) throw InputError("tail_lower_power: need j >= 1 and k >= 1");
  return make_rat(Int(1), int_pow(to_int(m + 1), j) * (2 * j - 1) * int_pow(to_int(k + 1), 2 * j - 1));
}

}  // namespace harmonic
