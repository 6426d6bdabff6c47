#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oamem/error.hpp"
#include "oamem/search.hpp"

using namespace oamem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SearchBounds small_bounds(int p_max, int pp_max) {
  SearchBounds b;
  b.p_max = p_max;
  b.p_prime_max = pp_max;
  return b;
}

}  // namespace

TEST_SUITE("search") {
  TEST_CASE("l = 0 at gamma = 0.1 peaks at the fundamental modes") {
    const auto r = search::max_coupling_over_pp(0, WaistRatio(0.1), small_bounds(30, 30));
    CHECK(r.best_p == 0);
    CHECK(r.best_p_prime == 0);
    CHECK(r.objective == doctest::Approx(0.18997251447687270).epsilon(1e-13));
    CHECK_FALSE(r.boundary_argmax);
    CHECK(r.kind == Objective::coupling);
  }

  TEST_CASE("objective equals re-evaluation at the reported indices") {
    for (int l : {1, 3}) {
      const auto r = search::max_coupling_over_pp(l, WaistRatio(0.4), small_bounds(20, 10));
      const double again = coupling::xi_analytic(l, r.best_p, r.best_p_prime, WaistRatio(0.4));
      CHECK(r.signed_xi == again);
      CHECK(r.objective == std::abs(again));
    }
  }

  TEST_CASE("maximum dominates the fundamental-mode value") {
    for (int l = 0; l <= 4; ++l) {
      for (double g : {0.1, 1.0, 3.0}) {
        const auto r = search::max_coupling_over_pp(l, WaistRatio(g), small_bounds(12, 6));
        CHECK(r.objective >= std::abs(coupling::xi_analytic(l, 0, 0, WaistRatio(g))));
        // The closed form is a different floating-point path to the same number.
        CHECK(r.objective >= coupling::xi_p0_closed_form(l, WaistRatio(g)) * (1.0 - 1e-14));
      }
    }
  }

  TEST_CASE("gamma_opt search at l = 1 is at least the peak value") {
    const auto r = search::max_coupling_over_pp(1, WaistRatio(1.0), small_bounds(10, 10));
    CHECK(r.objective >= 0.2364102402378860);
  }

  TEST_CASE("single-point bounds return the fundamental mode") {
    const TransferParams params{kTwoPi * 0.2, 2e18, kTwoPi * 50e3, kTwoPi * 50e3, 10.0, 1.0};
    const auto r = search::max_fidelity_over_pp(2, WaistRatio(0.3), params, small_bounds(0, 0));
    CHECK(r.best_p == 0);
    CHECK(r.best_p_prime == 0);
    CHECK_FALSE(r.boundary_argmax);
    const double xi = coupling::xi_p0_closed_form(2, WaistRatio(0.3));
    CHECK(r.objective == doctest::Approx(transfer::transfer_fidelity(params, xi).fidelity));
  }

  TEST_CASE("ideal transfer has unit fidelity at the coupling argmax") {
    const TransferParams params{kTwoPi * 0.2, 2e18, kTwoPi * 50e3, kTwoPi * 50e3, 0.0, 0.0};
    const auto f = search::max_fidelity_over_pp(2, WaistRatio(0.1), params, small_bounds(20, 6));
    const auto c = search::max_coupling_over_pp(2, WaistRatio(0.1), small_bounds(20, 6));
    CHECK(f.objective == 1.0);
    CHECK(f.best_p == c.best_p);
    CHECK(f.best_p_prime == c.best_p_prime);
  }

  TEST_CASE("fidelity and coupling argmax coincide on sampled parameters") {
    std::mt19937_64 rng(5);
    auto log_uniform = [&](double lo, double hi) {
      return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng));
    };
    for (int i = 0; i < 25; ++i) {
      const int l = static_cast<int>(rng() % 5);
      const double g = log_uniform(0.05, 5.0);
      const TransferParams params{kTwoPi * log_uniform(0.01, 10.0), log_uniform(1e14, 1e20),
                                  kTwoPi * log_uniform(1e3, 1e6), kTwoPi * log_uniform(1e3, 1e6),
                                  log_uniform(1e-3, 1e5), log_uniform(1e-3, 1e3)};
      const auto bounds = small_bounds(15, 6);
      const auto f = search::max_fidelity_over_pp(l, WaistRatio(g), params, bounds);
      const auto c = search::max_coupling_over_pp(l, WaistRatio(g), bounds);
      CAPTURE(l);
      CAPTURE(g);
      CHECK(f.best_p == c.best_p);
      CHECK(f.best_p_prime == c.best_p_prime);
      CHECK(f.kind == Objective::fidelity);
    }
  }

  TEST_CASE("results are identical at any thread count") {
    const auto bounds = small_bounds(40, 15);
    const auto g1 = search::xi_grid(4, WaistRatio(0.1), bounds, 1);
    for (unsigned t : {2u, 3u, 8u}) {
      const auto gt = search::xi_grid(4, WaistRatio(0.1), bounds, t);
      CHECK(gt == g1);
      const auto r1 = search::max_coupling_over_pp(4, WaistRatio(0.1), bounds, 1);
      const auto rt = search::max_coupling_over_pp(4, WaistRatio(0.1), bounds, t);
      CHECK(r1.best_p == rt.best_p);
      CHECK(r1.best_p_prime == rt.best_p_prime);
      CHECK(r1.objective == rt.objective);
    }
  }

  TEST_CASE("argmax on the search edge is flagged") {
    const auto r = search::max_coupling_over_pp(6, WaistRatio(0.1), small_bounds(10, 5));
    CHECK(r.best_p == 10);
    CHECK(r.boundary_argmax);
  }

  TEST_CASE("default bounds leave the argmax interior for l up to 10") {
    for (int l = 0; l <= 10; ++l) {
      const auto r = search::max_coupling_over_pp(l, WaistRatio(0.1), SearchBounds{});
      CAPTURE(l);
      CHECK_FALSE(r.boundary_argmax);
    }
  }

  TEST_CASE("golden-section search finds the analytic optimum") {
    SearchBounds b;
    b.gamma_lo = 0.1;
    b.gamma_hi = 5.0;
    CHECK(search::argmax_gamma_numeric(1, b, 1e-6) == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(search::argmax_gamma_numeric(4, b, 1e-6) == doctest::Approx(1.6).epsilon(1e-4));
    for (int l = 1; l <= 10; ++l) {
      CHECK(std::abs(search::argmax_gamma_numeric(l, b, 1e-8) - coupling::gamma_opt(l)) < 1e-6);
    }
  }

  TEST_CASE("bracket without an interior maximum is reported") {
    SearchBounds b;
    b.gamma_lo = 3.0;
    b.gamma_hi = 5.0;
    CHECK_THROWS_AS(search::argmax_gamma_numeric(1, b, 1e-6), ArgumentError);
    b.gamma_lo = 0.01;
    b.gamma_hi = 0.5;
    CHECK_THROWS_AS(search::argmax_gamma_numeric(1, b, 1e-6), ArgumentError);
    CHECK_THROWS_AS(search::argmax_gamma_numeric(0, SearchBounds{}, 1e-6), DomainError);
    CHECK_THROWS_AS(search::argmax_gamma_numeric(1, SearchBounds{}, 0.0), DomainError);
  }

  TEST_CASE("invalid bounds are rejected") {
    SearchBounds b;
    b.p_max = -1;
    CHECK_THROWS_AS(validate(b), DomainError);
    b = {};
    b.gamma_lo = 2.0;
    b.gamma_hi = 1.0;
    CHECK_THROWS_AS(validate(b), DomainError);
    b = {};
    b.gamma_lo = 0.0;
    CHECK_THROWS_AS(validate(b), DomainError);
  }
}
