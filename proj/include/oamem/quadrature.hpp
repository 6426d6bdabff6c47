#pragma once

// Composite Gauss-Legendre rules on the polar domain [0, r_max] x [0, 2pi]
// with convergence by simultaneous panel doubling.

#include <functional>
#include <vector>

namespace oamem {

struct QuadratureConfig {
  int radial_panels = 16;
  int angular_panels = 8;
  int nodes_per_panel = 20;
  /// Radial cutoff as a multiple of the largest waist involved.
  double r_max_waists = 8.0;
  /// Successive estimates must differ by less than this times max(|I|, 1).
  double target_rel_error = 1e-10;
  int max_doublings = 6;
};

/// Throws DomainError for non-positive panel counts, orders or tolerances.
void validate(const QuadratureConfig& cfg);

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int radial_panels = 0;
  int angular_panels = 0;
};

namespace quadrature {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
Rule gauss_legendre(int n);

/// `panels` equal panels of an n-point rule on [lo, hi].
Rule composite(double lo, double hi, int panels, int n);

/// Tensor-product rule on [0, r_max] x [0, 2pi] at a given doubling level.
struct PolarRule {
  Rule radial;
  Rule angular;
};

PolarRule polar_rule(const QuadratureConfig& cfg, double r_max, int level);

/// Evaluates `estimate(rule)` at increasing doubling levels until two
/// successive values agree to the configured tolerance. Throws
/// ConvergenceError carrying the last difference when max_doublings runs out.
QuadratureResult converge(const QuadratureConfig& cfg, double r_max,
                          const std::function<double(const PolarRule&)>& estimate);

}  // namespace quadrature
}  // namespace oamem
