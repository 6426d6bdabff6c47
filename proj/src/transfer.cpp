#include "oamem/transfer.hpp"

#include <cmath>
#include <numbers>

#include "oamem/error.hpp"

namespace oamem {

void validate(const TransferParams& params) {
  auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
  auto non_negative = [](double v) { return v >= 0.0 && std::isfinite(v); };
  if (!positive(params.g)) throw DomainError("transfer params: g must be positive");
  if (!positive(params.n_c)) throw DomainError("transfer params: n_c must be positive");
  if (!positive(params.kappa)) throw DomainError("transfer params: kappa must be positive");
  if (!positive(params.gamma_m)) {
    throw DomainError("transfer params: gamma_m must be positive");
  }
  if (!non_negative(params.N_m)) throw DomainError("transfer params: N_m must be >= 0");
  if (!non_negative(params.alpha)) {
    throw DomainError("transfer params: alpha must be >= 0");
  }
}

namespace transfer {

namespace {

// pi / (2 g sqrt(n_c) xi): the effective transfer time scale.
double transfer_time(const TransferParams& params, double xi) {
  validate(params);
  if (!(xi > 0.0)) {
    throw DomainError("transfer: coupling xi must be positive");
  }
  return std::numbers::pi / (2.0 * params.g * std::sqrt(params.n_c) * xi);
}

}  // namespace

double heating_quanta(const TransferParams& params, double xi) {
  return 0.5 * params.gamma_m * params.N_m * transfer_time(params, xi);
}

double damping_parameter(const TransferParams& params, double xi) {
  return params.alpha * 0.25 * (params.kappa + params.gamma_m) * transfer_time(params, xi);
}

double fidelity_from(double n, double lambda) noexcept {
  const double one_plus_n = 1.0 + n;
  return std::exp(-lambda * lambda / one_plus_n) / one_plus_n;
}

double log_fidelity_from(double n, double lambda) noexcept {
  return -lambda * lambda / (1.0 + n) - std::log1p(n);
}

FidelityBreakdown transfer_fidelity(const TransferParams& params, double xi) {
  FidelityBreakdown out;
  out.n = heating_quanta(params, xi);
  out.lambda = damping_parameter(params, xi);
  out.fidelity = fidelity_from(out.n, out.lambda);
  out.log_fidelity = log_fidelity_from(out.n, out.lambda);
  return out;
}

double bose_occupation(double omega_m, double temperature) {
  if (!(omega_m > 0.0)) {
    throw DomainError("bose_occupation: omega_m must be positive");
  }
  if (!(temperature >= 0.0)) {
    throw DomainError("bose_occupation: temperature must be >= 0");
  }
  if (temperature == 0.0) return 0.0;
  const double x = constants::hbar * omega_m / (constants::k_boltzmann * temperature);
  return 1.0 / std::expm1(x);
}

}  // namespace transfer
}  // namespace oamem
