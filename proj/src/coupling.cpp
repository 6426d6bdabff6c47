#include "oamem/coupling.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "oamem/error.hpp"
#include "oamem/specfun.hpp"

namespace oamem {

WaistRatio::WaistRatio(double gamma) : gamma_(gamma) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw DomainError("waist ratio gamma must be positive and finite, got " +
                      std::to_string(gamma));
  }
}

WaistRatio WaistRatio::from_waists(double w_c, double w_a) {
  if (!(w_c > 0.0) || !(w_a > 0.0)) {
    throw DomainError("waists must be positive");
  }
  const double ratio = w_c / w_a;
  return WaistRatio(ratio * ratio);
}

namespace coupling {

bool selection_allowed(int l_optical, int l_acoustic) noexcept {
  return std::abs(static_cast<long>(l_acoustic)) == 2 * std::abs(static_cast<long>(l_optical));
}

namespace {

using specfun::ln_gamma;

// Layout of the analytic sum
//
//   xi = P * sum_k W_k * S_k,
//   P   = gamma^|l| / (1 + d) * sqrt(p'! / ((1 + d) pi (2|l| + p')!)) / 4^p / b^(2|l|+1),
//   W_k = C(2p-2k, p-k) (p' + 2k + 2|l|)! / (k! p'! (|l| + k)!),
//   S_k = sum_n c_n t^(2k + p' - 2n),   c_n = coefficients of 2F1[-p', -2k; -p'-2k-2|l|],
//
// with a = 1 - gamma/2, b = 1 + gamma/2, t = a / b. Absorbing a^(2k+p') into the
// 2F1 argument (b/a)^2 leaves only non-negative powers of t, so gamma = 2 is a
// regular point. The Gamma(p+|l|+1) / (|l|+p)! and p! factors cancel.
struct SumLayout {
  int abs_l;
  int p;
  int p_prime;
  double gamma;
  double ln_prefactor;
  std::vector<double> ln_weights;  // ln W_k
  std::size_t peak;                // argmax_k ln W_k
};

SumLayout layout(int l, int p, int p_prime, double gamma) {
  SumLayout s{std::abs(l), p, p_prime, gamma, 0.0, {}, 0};
  const int d = modes::delta0(s.abs_l);
  const double b = 1.0 + 0.5 * gamma;
  s.ln_prefactor = s.abs_l * std::log(gamma) - std::log(1.0 + d) +
                   0.5 * (ln_gamma(p_prime + 1.0) -
                          std::log((1.0 + d) * std::numbers::pi) -
                          ln_gamma(2.0 * s.abs_l + p_prime + 1.0)) -
                   p * std::log(4.0) - (2.0 * s.abs_l + 1.0) * std::log(b);
  s.ln_weights.resize(p + 1);
  for (int k = 0; k <= p; ++k) {
    const double ln_binom = ln_gamma(2.0 * (p - k) + 1.0) - 2.0 * ln_gamma(p - k + 1.0);
    s.ln_weights[k] = ln_binom + ln_gamma(p_prime + 2.0 * k + 2.0 * s.abs_l + 1.0) -
                      ln_gamma(k + 1.0) - ln_gamma(p_prime + 1.0) -
                      ln_gamma(s.abs_l + k + 1.0);
    if (s.ln_weights[k] > s.ln_weights[s.peak]) s.peak = k;
  }
  return s;
}

template <class Real>
struct ScaledSum {
  Real sum;
  Real abs_sum;
};

// W_{k+1} / W_k = (m / (2 (2m - 1))) (p' + 2k + 2|l| + 1)(p' + 2k + 2|l| + 2)
//                 / ((k + 1)(|l| + k + 1)),   m = p - k.
template <class Real>
Real weight_ratio(const SumLayout& s, int k) {
  const int m = s.p - k;
  const int top = s.p_prime + 2 * k + 2 * s.abs_l;
  return Real(m) * Real(top + 1) * Real(top + 2) /
         (Real(2) * Real(2 * m - 1) * Real(k + 1) * Real(s.abs_l + k + 1));
}

// sum_k (W_k / W_peak) S_k in arithmetic `Real`. Weights are generated from
// the peak outwards so none overflows and all share one exact scale.
template <class Real>
ScaledSum<Real> scaled_sum(const SumLayout& s) {
  const Real half_gamma = Real(s.gamma) / Real(2);
  const Real t = (Real(1) - half_gamma) / (Real(1) + half_gamma);
  std::vector<Real> powers(static_cast<std::size_t>(2 * s.p + s.p_prime + 1));
  powers[0] = 1;
  for (std::size_t j = 1; j < powers.size(); ++j) powers[j] = powers[j - 1] * t;

  std::vector<Real> weights(static_cast<std::size_t>(s.p + 1));
  weights[s.peak] = 1;
  for (int k = static_cast<int>(s.peak); k < s.p; ++k) {
    weights[k + 1] = weights[k] * weight_ratio<Real>(s, k);
  }
  for (int k = static_cast<int>(s.peak); k > 0; --k) {
    weights[k - 1] = weights[k] / weight_ratio<Real>(s, k - 1);
  }

  ScaledSum<Real> out{Real(0), Real(0)};
  for (int k = 0; k <= s.p; ++k) {
    const int top_power = 2 * k + s.p_prime;
    Real inner_abs = 0;
    const Real inner = specfun::terminating_hyp_sum<Real>(
        static_cast<std::uint32_t>(s.p_prime), static_cast<std::uint32_t>(2 * k),
        static_cast<std::uint32_t>(s.p_prime + 2 * k + 2 * s.abs_l),
        [&](std::uint32_t n) -> const Real& { return powers[top_power - 2 * n]; },
        inner_abs);
    out.sum += weights[k] * inner;
    out.abs_sum += weights[k] * inner_abs;
  }
  return out;
}

template <class Real>
XiEvaluation evaluate(const SumLayout& s, int working_digits) {
  const ScaledSum<Real> raw = scaled_sum<Real>(s);
  const double sum = static_cast<double>(raw.sum);
  const double abs_sum = static_cast<double>(raw.abs_sum);
  XiEvaluation e;
  e.working_digits = working_digits;
  if (abs_sum == 0.0) {
    return e;
  }
  if (sum == 0.0) {
    e.digits_lost = std::numeric_limits<double>::infinity();
    return e;
  }
  e.digits_lost = std::log10(abs_sum / std::abs(sum));
  const double magnitude =
      std::exp(s.ln_prefactor + s.ln_weights[s.peak] + std::log(std::abs(sum)));
  e.value = std::copysign(magnitude, sum);
  return e;
}

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;

// Digits that may cancel while still leaving ~13 correct significant digits.
constexpr double kDoubleBudget = 3.0;
constexpr double kQuadBudget = 20.0;
constexpr double kFloat50Budget = 36.0;

}  // namespace

XiEvaluation xi_analytic_detail(int l, int p, int p_prime, WaistRatio gamma) {
  if (p < 0 || p_prime < 0) {
    throw DomainError("xi_analytic: radial indices must be non-negative");
  }
  const SumLayout s = layout(l, p, p_prime, gamma.value());
  XiEvaluation e = evaluate<double>(s, 16);
  if (e.digits_lost <= kDoubleBudget) return e;
  e = evaluate<__float128>(s, 34);
  if (e.digits_lost <= kQuadBudget) return e;
  e = evaluate<Float50>(s, 50);
  if (e.digits_lost <= kFloat50Budget) return e;
  return evaluate<Float100>(s, 100);
}

double xi_analytic(int l, int p, int p_prime, WaistRatio gamma) {
  return xi_analytic_detail(l, p, p_prime, gamma).value;
}

double xi_p0_closed_form(int l, WaistRatio gamma) {
  const int abs_l = std::abs(l);
  const int d = modes::delta0(abs_l);
  const double g = gamma.value();
  const double ln_value =
      abs_l * std::log(g) - std::log(1.0 + d) - ln_gamma(abs_l + 1.0) +
      0.5 * (ln_gamma(2.0 * abs_l + 1.0) - std::log((1.0 + d) * std::numbers::pi)) -
      (2.0 * abs_l + 1.0) * std::log1p(0.5 * g);
  return std::exp(ln_value);
}

double gamma_opt(int l) {
  if (l == 0) {
    throw DomainError("gamma_opt: defined only for |l| >= 1");
  }
  const double abs_l = std::abs(static_cast<double>(l));
  return 2.0 * abs_l / (abs_l + 1.0);
}

QuadratureResult chi_quadrature(const ModeIndex& optical, const ModeIndex& acoustic,
                                double w_c, double w_a, const QuadratureConfig& quad) {
  const ModeGeometry optical_geom{w_c, ModeRole::optical};
  const ModeGeometry acoustic_geom{w_a, ModeRole::acoustic};
  validate(optical);
  validate(acoustic);
  validate(optical_geom);
  validate(acoustic_geom);
  const double r_max = quad.r_max_waists * std::max(w_c, w_a);

  return quadrature::converge(quad, r_max, [&](const quadrature::PolarRule& rule) {
    const auto& rn = rule.radial.nodes;
    const auto& tn = rule.angular.nodes;
    std::vector<double> opt_r(rn.size()), ac_r(rn.size());
    for (std::size_t i = 0; i < rn.size(); ++i) {
      opt_r[i] = modes::radial_profile(optical, optical_geom, rn[i]);
      ac_r[i] = modes::radial_profile(acoustic, acoustic_geom, rn[i]);
    }
    std::vector<double> opt_t(tn.size()), ac_t(tn.size());
    for (std::size_t j = 0; j < tn.size(); ++j) {
      opt_t[j] = modes::angular_profile(optical.l, tn[j]);
      ac_t[j] = modes::angular_profile(acoustic.l, tn[j]);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < rn.size(); ++i) {
      double row = 0.0;
      for (std::size_t j = 0; j < tn.size(); ++j) {
        const double u_opt = opt_r[i] * opt_t[j];
        const double u_ac = ac_r[i] * ac_t[j];
        row += rule.angular.weights[j] * u_opt * u_opt * u_ac;
      }
      total += rule.radial.weights[i] * rn[i] * row;
    }
    return w_a * total;
  });
}

double single_photon_coupling(const CavityParams& params) {
  if (!(params.x0 >= 0.0) || !(params.omega_c > 0.0) || !(params.length > 0.0)) {
    throw DomainError("cavity parameters: x0 must be >= 0, omega_c and L positive");
  }
  return params.x0 * params.omega_c / params.length;
}

}  // namespace coupling
}  // namespace oamem
