#pragma once

// Dimensionless optoacoustic overlap between the optical intensity |u_lp|^2
// (waist w_c) and the acoustic profile u_l'p' (waist w_a):
//
//   chi = w_a * Int |u_lp|^2 u_l'p' r dr dtheta = xi_lpp'(gamma) delta_{|l'|,2|l|},
//   gamma = (w_c / w_a)^2.

#include "oamem/modes.hpp"
#include "oamem/quadrature.hpp"

namespace oamem {

/// gamma = (w_c / w_a)^2, strictly positive.
class WaistRatio {
 public:
  /// Throws DomainError unless gamma is positive and finite.
  explicit WaistRatio(double gamma);

  static WaistRatio from_waists(double w_c, double w_a);

  double value() const noexcept { return gamma_; }

 private:
  double gamma_;
};

struct CavityParams {
  double x0 = 0.0;       ///< zero-point motion amplitude, m
  double omega_c = 0.0;  ///< cavity field angular frequency, rad/s
  double length = 0.0;   ///< cavity length, m
};

namespace coupling {

/// |l_acoustic| == 2 |l_optical|.
bool selection_allowed(int l_optical, int l_acoustic) noexcept;

/// Diagnostics of one analytic evaluation.
struct XiEvaluation {
  double value = 0.0;
  /// Decimal digits cancelled in the finite double sum: log10(sum|t| / |sum t|).
  double digits_lost = 0.0;
  /// Significant decimal digits of the arithmetic that produced `value`.
  int working_digits = 0;
};

/// Closed-form hypergeometric expression for xi_lpp'(gamma). Depends on |l|.
/// Throws DomainError for p < 0 or p' < 0.
double xi_analytic(int l, int p, int p_prime, WaistRatio gamma);
XiEvaluation xi_analytic_detail(int l, int p, int p_prime, WaistRatio gamma);

/// xi_l00 = gamma^|l| / ((1 + delta_{0l}) |l|!) sqrt((2|l|)! / ((1 + delta_{0,2l}) pi))
///          (1 + gamma/2)^-(2|l| + 1).
double xi_p0_closed_form(int l, WaistRatio gamma);

/// Waist ratio maximizing xi_l00: 2|l| / (|l| + 1). Throws DomainError for l = 0.
double gamma_opt(int l);

/// Direct tensor-product quadrature of the overlap integral with physical
/// waists. Independent of xi_analytic (shares only specfun primitives).
QuadratureResult chi_quadrature(const ModeIndex& optical, const ModeIndex& acoustic,
                                double w_c, double w_a,
                                const QuadratureConfig& quad = {});

/// g = x0 omega_c / L in rad/s.
double single_photon_coupling(const CavityParams& params);

}  // namespace coupling
}  // namespace oamem
