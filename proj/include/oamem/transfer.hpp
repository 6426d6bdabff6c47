#pragma once

// Coherent-state transfer fidelity for a strongly driven cavity with small
// single-photon coupling:
//
//   n      = (gamma_m N_m / 2)           * pi / (2 g sqrt(n_c) xi)
//   lambda = alpha (kappa + gamma_m) / 4 * pi / (2 g sqrt(n_c) xi)
//   F      = exp(-lambda^2 / (1 + n)) / (1 + n)
//
// All rates are angular frequencies (rad/s).

namespace oamem {

namespace constants {
/// CODATA 2018 (exact in the SI since 2019).
inline constexpr double hbar = 1.054571817e-34;     // J s
inline constexpr double k_boltzmann = 1.380649e-23; // J / K
}  // namespace constants

struct TransferParams {
  double g = 0.0;        ///< single-photon coupling, rad/s
  double n_c = 0.0;      ///< intracavity photon number
  double kappa = 0.0;    ///< cavity decay, rad/s
  double gamma_m = 0.0;  ///< acoustic decay, rad/s
  double N_m = 0.0;      ///< environmental phonon occupation
  double alpha = 0.0;    ///< coherent amplitude magnitude
};

/// Throws DomainError unless g, n_c, kappa, gamma_m > 0 and N_m, alpha >= 0.
void validate(const TransferParams& params);

struct FidelityBreakdown {
  double n = 0.0;
  double lambda = 0.0;
  double fidelity = 1.0;
  /// ln F; stays finite where F underflows to 0 in double (lambda^2 / (1 + n) > ~745).
  double log_fidelity = 0.0;
};

namespace transfer {

double heating_quanta(const TransferParams& params, double xi);
double damping_parameter(const TransferParams& params, double xi);
FidelityBreakdown transfer_fidelity(const TransferParams& params, double xi);

/// exp(-lambda^2 / (1 + n)) / (1 + n).
double fidelity_from(double n, double lambda) noexcept;

/// -lambda^2 / (1 + n) - ln(1 + n).
double log_fidelity_from(double n, double lambda) noexcept;

/// Bose-Einstein occupation 1 / (exp(hbar omega_m / k_B T) - 1); 0 at T = 0.
double bose_occupation(double omega_m, double temperature);

}  // namespace transfer
}  // namespace oamem
