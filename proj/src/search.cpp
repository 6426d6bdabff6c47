#include "oamem/search.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "oamem/error.hpp"

namespace oamem {

void validate(const SearchBounds& bounds) {
  if (bounds.p_max < 0 || bounds.p_prime_max < 0) {
    throw DomainError("search bounds: p_max and p_prime_max must be >= 0");
  }
  if (!(bounds.gamma_lo > 0.0) || !(bounds.gamma_hi > bounds.gamma_lo) ||
      !std::isfinite(bounds.gamma_hi)) {
    throw DomainError("search bounds: need 0 < gamma_lo < gamma_hi");
  }
}

namespace search {

namespace {

std::size_t grid_index(const SearchBounds& b, int p, int pp) {
  return static_cast<std::size_t>(p) * (b.p_prime_max + 1) + pp;
}

bool on_boundary(const SearchBounds& b, int p, int pp) {
  return (b.p_max > 0 && p == b.p_max) || (b.p_prime_max > 0 && pp == b.p_prime_max);
}

}  // namespace

std::vector<double> xi_grid(int l, WaistRatio gamma, const SearchBounds& bounds,
                            unsigned threads) {
  validate(bounds);
  const std::size_t cols = bounds.p_prime_max + 1;
  const std::size_t count = (bounds.p_max + 1) * cols;
  std::vector<double> grid(count);
  auto work = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < count; i += stride) {
      grid[i] = coupling::xi_analytic(l, static_cast<int>(i / cols),
                                      static_cast<int>(i % cols), gamma);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  if (threads == 1) {
    work(0, 1);
    return grid;
  }
  // Strided assignment balances the cost, which grows with p and p'.
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          work(t, threads);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return grid;
}

SearchResult max_coupling_over_pp(int l, WaistRatio gamma, const SearchBounds& bounds,
                                  unsigned threads) {
  const std::vector<double> grid = xi_grid(l, gamma, bounds, threads);
  SearchResult best;
  best.l = l;
  best.best_gamma = gamma.value();
  best.kind = Objective::coupling;
  best.objective = -1.0;
  for (int p = 0; p <= bounds.p_max; ++p) {
    for (int pp = 0; pp <= bounds.p_prime_max; ++pp) {
      const double xi = grid[grid_index(bounds, p, pp)];
      if (std::abs(xi) > best.objective) {
        best.objective = std::abs(xi);
        best.signed_xi = xi;
        best.best_p = p;
        best.best_p_prime = pp;
      }
    }
  }
  best.boundary_argmax = on_boundary(bounds, best.best_p, best.best_p_prime);
  return best;
}

SearchResult max_fidelity_over_pp(int l, WaistRatio gamma, const TransferParams& params,
                                  const SearchBounds& bounds, unsigned threads) {
  validate(params);
  const std::vector<double> grid = xi_grid(l, gamma, bounds, threads);
  SearchResult best;
  best.l = l;
  best.best_gamma = gamma.value();
  best.kind = Objective::fidelity;
  bool found = false;
  double best_abs_xi = 0.0;
  for (int p = 0; p <= bounds.p_max; ++p) {
    for (int pp = 0; pp <= bounds.p_prime_max; ++pp) {
      const double xi = grid[grid_index(bounds, p, pp)];
      if (xi == 0.0) continue;
      const FidelityBreakdown f = transfer::transfer_fidelity(params, std::abs(xi));
      // ln F keeps the ranking strict where F itself underflows to 0.
      const double best_log = found ? best.breakdown->log_fidelity : 0.0;
      const bool better = !found || f.log_fidelity > best_log ||
                          (f.log_fidelity == best_log && std::abs(xi) > best_abs_xi);
      if (better) {
        found = true;
        best.objective = f.fidelity;
        best.breakdown = f;
        best.signed_xi = xi;
        best_abs_xi = std::abs(xi);
        best.best_p = p;
        best.best_p_prime = pp;
      }
    }
  }
  if (!found) {
    throw DomainError("max_fidelity_over_pp: every grid point has zero coupling");
  }
  best.boundary_argmax = on_boundary(bounds, best.best_p, best.best_p_prime);
  return best;
}

double argmax_gamma_numeric(int l, const SearchBounds& bounds, double tol) {
  validate(bounds);
  if (l == 0) {
    throw DomainError("argmax_gamma_numeric: defined only for |l| >= 1");
  }
  if (!(tol > 0.0)) {
    throw DomainError("argmax_gamma_numeric: tolerance must be positive");
  }
  auto f = [l](double g) { return coupling::xi_p0_closed_form(l, WaistRatio(g)); };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = bounds.gamma_lo;
  double b = bounds.gamma_hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  const double fx = f(x);
  const double edge = 2.0 * tol;
  if (x - bounds.gamma_lo < edge || bounds.gamma_hi - x < edge ||
      !(fx > f(bounds.gamma_lo) && fx > f(bounds.gamma_hi))) {
    throw ArgumentError("argmax_gamma_numeric: bracket [" +
                        std::to_string(bounds.gamma_lo) + ", " +
                        std::to_string(bounds.gamma_hi) +
                        "] does not contain the maximum (objective monotone on it)");
  }
  return x;
}

}  // namespace search
}  // namespace oamem
