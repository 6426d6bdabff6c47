#include "oamem/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "oamem/error.hpp"

namespace oamem {

void validate(const QuadratureConfig& cfg) {
  if (cfg.radial_panels <= 0 || cfg.angular_panels <= 0 || cfg.nodes_per_panel <= 0) {
    throw DomainError("quadrature: panel counts and nodes per panel must be positive");
  }
  if (!(cfg.r_max_waists > 0.0) || !(cfg.target_rel_error > 0.0)) {
    throw DomainError("quadrature: r_max_waists and target_rel_error must be positive");
  }
  if (cfg.max_doublings < 1) {
    throw DomainError("quadrature: max_doublings must be at least 1");
  }
}

namespace quadrature {

Rule gauss_legendre(int n) {
  Rule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

Rule composite(double lo, double hi, int panels, int n) {
  const Rule base = gauss_legendre(n);
  const double width = (hi - lo) / panels;
  Rule rule;
  rule.nodes.reserve(static_cast<std::size_t>(panels) * n);
  rule.weights.reserve(static_cast<std::size_t>(panels) * n);
  for (int k = 0; k < panels; ++k) {
    const double mid = lo + (k + 0.5) * width;
    for (int i = 0; i < n; ++i) {
      rule.nodes.push_back(mid + 0.5 * width * base.nodes[i]);
      rule.weights.push_back(0.5 * width * base.weights[i]);
    }
  }
  return rule;
}

PolarRule polar_rule(const QuadratureConfig& cfg, double r_max, int level) {
  const int scale = 1 << level;
  return {composite(0.0, r_max, cfg.radial_panels * scale, cfg.nodes_per_panel),
          composite(0.0, 2.0 * std::numbers::pi, cfg.angular_panels * scale,
                    cfg.nodes_per_panel)};
}

QuadratureResult converge(const QuadratureConfig& cfg, double r_max,
                          const std::function<double(const PolarRule&)>& estimate) {
  validate(cfg);
  double previous = estimate(polar_rule(cfg, r_max, 0));
  double diff = 0.0;
  for (int level = 1; level <= cfg.max_doublings; ++level) {
    const double current = estimate(polar_rule(cfg, r_max, level));
    diff = std::abs(current - previous);
    if (diff <= cfg.target_rel_error * std::max(std::abs(current), 1.0)) {
      return {current, diff, cfg.radial_panels << level, cfg.angular_panels << level};
    }
    previous = current;
  }
  std::ostringstream msg;
  msg << "quadrature did not converge after " << cfg.max_doublings
      << " panel doublings; last difference " << diff;
  throw ConvergenceError(msg.str(), diff);
}

}  // namespace quadrature
}  // namespace oamem
