#pragma once

// Special-function kernel: log-gamma, binomial coefficients, associated
// Laguerre polynomials and the terminating Gauss hypergeometric series.
// Everything here is pure and thread-safe.

#include <algorithm>
#include <cstdint>

#include "oamem/error.hpp"

namespace oamem::specfun {

/// Natural log of Gamma(x) for x > 0. Throws DomainError otherwise.
double ln_gamma(double x);

/// Binomial coefficient C(n, k). Exact (correctly rounded) for n <= 60,
/// log-space beyond. Throws DomainError when k > n.
double binomial(std::uint32_t n, std::uint32_t k);

/// Associated Laguerre polynomial L_p^a(x) by upward three-term recurrence.
double assoc_laguerre(std::uint32_t p, std::uint32_t a, double x);

/// Parameters of 2F1[-a_neg, -b_neg; -c_neg; z] stored as magnitudes.
/// The series stops after min(a_neg, b_neg) + 1 terms.
struct TerminatingHypArgs {
  std::uint32_t a_neg = 0;
  std::uint32_t b_neg = 0;
  std::uint32_t c_neg = 0;
  double z = 0.0;

  std::uint32_t last_term() const noexcept { return std::min(a_neg, b_neg); }
};

/// Throws DomainError when the denominator Pochhammer symbol (-c_neg)_n
/// vanishes inside the terminating range, or z is not finite.
void validate(const TerminatingHypArgs& args);

/// Sum_{n=0}^{min(a,b)} (-a)_n (-b)_n / ((-c)_n n!) z^n, term ratio recurrence.
double hyp2f1_terminating(const TerminatingHypArgs& args);

/// Sum_n coeff_n * weight(n) over the terminating range of 2F1[-a,-b;-c; .],
/// with coeff_n built by the multiplicative term ratio in arithmetic `Real`.
/// Also accumulates Sum_n |coeff_n * weight(n)| into `abs_sum` so callers can
/// measure cancellation. The caller guarantees c_neg >= min(a_neg, b_neg).
template <class Real, class Weight>
Real terminating_hyp_sum(std::uint32_t a_neg, std::uint32_t b_neg,
                         std::uint32_t c_neg, Weight&& weight, Real& abs_sum) {
  const std::uint32_t last = std::min(a_neg, b_neg);
  Real coeff = 1;
  Real sum = 0;
  abs_sum = 0;
  for (std::uint32_t n = 0;; ++n) {
    const Real term = coeff * weight(n);
    sum += term;
    abs_sum += term < 0 ? Real(-term) : term;
    if (n == last) break;
    // (n - a)(n - b) / ((n - c)(n + 1)); every factor is a small integer.
    const Real num = Real(static_cast<std::int64_t>(n) - a_neg) *
                     Real(static_cast<std::int64_t>(n) - b_neg);
    const Real den = Real(static_cast<std::int64_t>(n) - c_neg) * Real(n + 1);
    coeff = coeff * num / den;
  }
  return sum;
}

}  // namespace oamem::specfun
