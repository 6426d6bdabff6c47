#pragma once

// Optimizers over the mode indices (p, p') and the waist ratio gamma.

#include <optional>
#include <vector>

#include "oamem/coupling.hpp"
#include "oamem/transfer.hpp"

namespace oamem {

struct SearchBounds {
  int p_max = 64;
  int p_prime_max = 30;
  double gamma_lo = 0.01;
  double gamma_hi = 10.0;
};

/// Throws DomainError for negative index bounds or an invalid gamma bracket.
void validate(const SearchBounds& bounds);

enum class Objective { coupling, fidelity };

struct SearchResult {
  int l = 0;
  int best_p = 0;
  int best_p_prime = 0;
  double best_gamma = 0.0;
  /// |xi| for coupling searches, F for fidelity searches.
  double objective = 0.0;
  Objective kind = Objective::coupling;
  /// xi at the argmax with its sign.
  double signed_xi = 0.0;
  /// Argmax sits on a non-zero p_max or p_prime_max; the bounds may be too tight.
  bool boundary_argmax = false;
  std::optional<FidelityBreakdown> breakdown;
};

namespace search {

/// xi_analytic over 0..p_max x 0..p_prime_max, row-major in (p, p').
/// Points are independent; `threads` > 1 evaluates them concurrently with
/// results identical to the sequential order.
std::vector<double> xi_grid(int l, WaistRatio gamma, const SearchBounds& bounds,
                            unsigned threads = 1);

/// Exhaustive max of |xi|; ties go to the smallest p, then the smallest p'.
SearchResult max_coupling_over_pp(int l, WaistRatio gamma, const SearchBounds& bounds,
                                  unsigned threads = 1);

/// Exhaustive max of F(|xi|), ranked by ln F so that underflowed fidelities
/// still order correctly. Ties are broken by larger |xi|, then by
/// smallest (p, p'), so the argmax coincides with max_coupling_over_pp.
/// Points with xi == 0 are not admissible.
SearchResult max_fidelity_over_pp(int l, WaistRatio gamma, const TransferParams& params,
                                  const SearchBounds& bounds, unsigned threads = 1);

/// Golden-section maximization of xi_l00(gamma) on [gamma_lo, gamma_hi].
/// Throws ArgumentError when the maximum is not interior to the bracket and
/// DomainError for l = 0.
double argmax_gamma_numeric(int l, const SearchBounds& bounds, double tol);

}  // namespace search
}  // namespace oamem
