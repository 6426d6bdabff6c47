#pragma once

// Exact-arithmetic reference implementations used only by the tests. They
// share no code with the library: rationals and big integers from
// Boost.Multiprecision, explicit products instead of term-ratio recurrences,
// and the literal summation order of the coupling formula.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <vector>

namespace oracle {

using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;
using Big = boost::multiprecision::cpp_bin_float_50;

// C(n, k) for all k from Pascal's triangle.
inline std::vector<std::vector<cpp_int>> pascal(unsigned n_max) {
  std::vector<std::vector<cpp_int>> rows(n_max + 1);
  for (unsigned n = 0; n <= n_max; ++n) {
    rows[n].assign(n + 1, cpp_int(1));
    for (unsigned k = 1; k < n; ++k) rows[n][k] = rows[n - 1][k - 1] + rows[n - 1][k];
  }
  return rows;
}

// num / den with den made positive first; Boost 1.74's rational rejects a
// negative unbounded-integer denominator.
inline cpp_rational ratio(cpp_int num, cpp_int den) {
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return cpp_rational(num, den);
}

inline cpp_int factorial(unsigned n) {
  cpp_int f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

inline cpp_int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  return factorial(n) / (factorial(k) * factorial(n - k));
}

// (x)_n for integer x.
inline cpp_int pochhammer(std::int64_t x, unsigned n) {
  cpp_int out = 1;
  for (unsigned i = 0; i < n; ++i) out *= (x + static_cast<std::int64_t>(i));
  return out;
}

inline cpp_rational power(const cpp_rational& x, unsigned e) {
  cpp_rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= x;
  return out;
}

// 2F1[-a, -b; -c; z] with every term built from explicit Pochhammer products.
inline cpp_rational hyp2f1(unsigned a, unsigned b, unsigned c, const cpp_rational& z) {
  const unsigned last = a < b ? a : b;
  cpp_rational sum = 0;
  for (unsigned n = 0; n <= last; ++n) {
    const cpp_int num = pochhammer(-static_cast<std::int64_t>(a), n) *
                        pochhammer(-static_cast<std::int64_t>(b), n);
    const cpp_int den = pochhammer(-static_cast<std::int64_t>(c), n) * factorial(n);
    sum += ratio(num, den) * power(z, n);
  }
  return sum;
}

// Sum of |terms| of the series above; the scale of its rounding error.
inline cpp_rational hyp2f1_abs(unsigned a, unsigned b, unsigned c, const cpp_rational& z) {
  const unsigned last = a < b ? a : b;
  cpp_rational sum = 0;
  for (unsigned n = 0; n <= last; ++n) {
    const cpp_rational t = ratio(pochhammer(-static_cast<std::int64_t>(a), n) *
                                     pochhammer(-static_cast<std::int64_t>(b), n),
                                 pochhammer(-static_cast<std::int64_t>(c), n) * factorial(n)) *
                           power(z, n);
    sum += t < 0 ? cpp_rational(-t) : t;
  }
  return sum;
}

// L_p^a(x) = sum_j (-1)^j C(p + a, p - j) x^j / j!.
inline cpp_rational laguerre(unsigned p, unsigned a, const cpp_rational& x) {
  cpp_rational sum = 0;
  for (unsigned j = 0; j <= p; ++j) {
    cpp_rational term(binomial(p + a, p - j), factorial(j));
    term *= power(x, j);
    sum += (j % 2 == 0) ? term : cpp_rational(-term);
  }
  return sum;
}

inline double to_double(const cpp_rational& q) {
  return static_cast<double>(Big(numerator(q)) / Big(denominator(q)));
}

// Overlap xi_lpp'(gamma) from the closed hypergeometric formula, evaluated
// term by term in exact rationals. The powers (1 - g/2)^(2k+p') z^n with
// z = ((1 + g/2)/(1 - g/2))^2 are multiplied out to
// (1 - g/2)^(2k+p'-2n) (1 + g/2)^(2n), which is the same rational for
// g != 2 and extends it continuously to g = 2.
inline double xi(int l_signed, unsigned p, unsigned pp, double gamma_double) {
  const unsigned l = static_cast<unsigned>(l_signed < 0 ? -l_signed : l_signed);
  const unsigned delta = l == 0 ? 1 : 0;
  const cpp_rational g(gamma_double);
  const cpp_rational minus = 1 - g / 2;
  const cpp_rational plus = 1 + g / 2;

  cpp_rational sum = 0;
  for (unsigned k = 0; k <= p; ++k) {
    const cpp_rational weight(binomial(2 * p - 2 * k, p - k) * factorial(pp + 2 * k + 2 * l),
                              factorial(k) * factorial(pp) * factorial(l + k));
    const unsigned a = pp, b = 2 * k, c = pp + 2 * k + 2 * l;
    const unsigned last = a < b ? a : b;
    cpp_rational inner = 0;
    for (unsigned n = 0; n <= last; ++n) {
      const cpp_int num = pochhammer(-static_cast<std::int64_t>(a), n) *
                          pochhammer(-static_cast<std::int64_t>(b), n);
      const cpp_int den = pochhammer(-static_cast<std::int64_t>(c), n) * factorial(n);
      inner += ratio(num, den) * power(minus, 2 * k + pp - 2 * n) * power(plus, 2 * n);
    }
    sum += weight * inner / power(plus, 2 * k + pp + 2 * l + 1);
  }
  // p! / ((1+d)(l+p)!) * Gamma(p+l+1) / (4^p p!) = 1 / ((1+d) 4^p)
  const cpp_rational rational_part =
      power(g, l) * sum / (cpp_rational(1 + delta) * power(cpp_rational(4), p));
  const Big root = boost::multiprecision::sqrt(
      Big(factorial(pp)) /
      (Big(1 + delta) * boost::math::constants::pi<Big>() * Big(factorial(2 * l + pp))));
  const Big value =
      Big(numerator(rational_part)) / Big(denominator(rational_part)) * root;
  return static_cast<double>(value);
}

}  // namespace oracle
