#include "oamem/specfun.hpp"

#include <cmath>
#include <string>

namespace oamem::specfun {

double ln_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("ln_gamma: argument must be a positive finite number, got " +
                      std::to_string(x));
  }
  // lgamma_r leaves the global signgam untouched; sign is +1 for x > 0.
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

double binomial(std::uint32_t n, std::uint32_t k) {
  if (k > n) {
    throw DomainError("binomial: k = " + std::to_string(k) + " exceeds n = " +
                      std::to_string(n));
  }
  k = std::min(k, n - k);
  if (n <= 60) {
    // C(60, 30) * 60 < 2^128; each partial product is itself a binomial.
    unsigned __int128 acc = 1;
    for (std::uint32_t i = 1; i <= k; ++i) {
      acc = acc * (n - k + i) / i;
    }
    return static_cast<double>(acc);
  }
  return std::exp(ln_gamma(n + 1.0) - ln_gamma(k + 1.0) - ln_gamma(n - k + 1.0));
}

double assoc_laguerre(std::uint32_t p, std::uint32_t a, double x) {
  double prev = 1.0;
  if (p == 0) return prev;
  double curr = a + 1.0 - x;
  for (std::uint32_t n = 1; n < p; ++n) {
    const double next = ((2.0 * n + a + 1.0 - x) * curr - (n + a) * prev) / (n + 1.0);
    prev = curr;
    curr = next;
  }
  return curr;
}

void validate(const TerminatingHypArgs& args) {
  if (!std::isfinite(args.z)) {
    throw DomainError("hyp2f1_terminating: z must be finite");
  }
  if (args.c_neg < args.last_term()) {
    throw DomainError("hyp2f1_terminating: c_neg = " + std::to_string(args.c_neg) +
                      " < min(a_neg, b_neg) = " + std::to_string(args.last_term()) +
                      "; denominator Pochhammer vanishes before termination");
  }
}

double hyp2f1_terminating(const TerminatingHypArgs& args) {
  validate(args);
  double zn = 1.0;
  std::uint32_t next_power = 0;
  double abs_sum = 0.0;
  // Terms are requested in increasing n, so z^n is carried along.
  return terminating_hyp_sum<double>(
      args.a_neg, args.b_neg, args.c_neg,
      [&](std::uint32_t n) {
        while (next_power < n) {
          zn *= args.z;
          ++next_power;
        }
        return zn;
      },
      abs_sum);
}

}  // namespace oamem::specfun
