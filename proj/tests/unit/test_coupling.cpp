#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <tuple>

#include "oamem/coupling.hpp"
#include "oamem/error.hpp"
#include "oracle/exact.hpp"
#include "oracle/reference_values.hpp"

using namespace oamem;

namespace {

bool agrees(double got, double want, double rel = 1e-12, double abs = 1e-15) {
  return std::abs(got - want) <= std::max(abs, rel * std::abs(want));
}

}  // namespace

TEST_SUITE("coupling") {
  TEST_CASE("xi_analytic agrees with the exact rational evaluation") {
    for (double gamma : {0.1, 0.5, 1.0, 2.0, 2.5, 7.0}) {
      for (int l = 0; l <= 6; ++l) {
        for (int p = 0; p <= 8; ++p) {
          for (int pp = 0; pp <= 8; ++pp) {
            const double want = oracle::xi(l, p, pp, gamma);
            const double got = coupling::xi_analytic(l, p, pp, WaistRatio(gamma));
            CAPTURE(gamma);
            CAPTURE(l);
            CAPTURE(p);
            CAPTURE(pp);
            CHECK(agrees(got, want));
          }
        }
      }
    }
  }

  TEST_CASE("xi_analytic at large indices needs and gets extended precision") {
    for (auto [l, p, pp, gamma] : {std::tuple{0, 40, 40, 0.01}, {3, 50, 25, 0.1},
                                   {9, 51, 0, 0.1}, {2, 30, 30, 10.0}, {5, 64, 30, 0.3}}) {
      const auto e = coupling::xi_analytic_detail(l, p, pp, WaistRatio(gamma));
      const double want = oracle::xi(l, p, pp, gamma);
      CAPTURE(l);
      CAPTURE(p);
      CAPTURE(pp);
      CAPTURE(gamma);
      CAPTURE(e.digits_lost);
      CHECK(e.working_digits >= 16);
      CHECK(agrees(e.value, want, 1e-12, 1e-17));
    }
    const auto hard = coupling::xi_analytic_detail(0, 40, 40, WaistRatio(0.01));
    CHECK(hard.working_digits > 16);
    CHECK(hard.digits_lost > 3.0);
  }

  TEST_CASE("xi_analytic reproduces frozen high-precision values") {
    for (const auto& c : oracle::frozen::kXi) {
      CAPTURE(c.l);
      CAPTURE(c.p);
      CAPTURE(c.pp);
      CAPTURE(c.gamma);
      CHECK(agrees(coupling::xi_analytic(c.l, c.p, c.pp, WaistRatio(c.gamma)), c.xi, 1e-12, 1e-18));
    }
  }

  TEST_CASE("closed form for p = p' = 0 matches the general expression") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> log_gamma(std::log(0.01), std::log(50.0));
    for (int i = 0; i < 500; ++i) {
      const double g = std::exp(log_gamma(rng));
      for (int l = -10; l <= 10; ++l) {
        CAPTURE(g);
        CAPTURE(l);
        CHECK(agrees(coupling::xi_analytic(l, 0, 0, WaistRatio(g)),
                     coupling::xi_p0_closed_form(l, WaistRatio(g)), 1e-13, 1e-300));
      }
    }
  }

  TEST_CASE("peak of xi_100 is 0.2364 at gamma = 1") {
    const double peak = coupling::xi_p0_closed_form(1, WaistRatio(coupling::gamma_opt(1)));
    CHECK(peak == doctest::Approx(0.23641024023788603).epsilon(1e-14));
  }

  TEST_CASE("gamma_opt is the stationary point of xi_l00") {
    for (int l = 1; l <= 12; ++l) {
      const double g = coupling::gamma_opt(l);
      CHECK(g == doctest::Approx(2.0 * l / (l + 1.0)));
      const double h = 1e-3 * g;
      const double mid = coupling::xi_p0_closed_form(l, WaistRatio(g));
      CHECK(mid > coupling::xi_p0_closed_form(l, WaistRatio(g - h)));
      CHECK(mid > coupling::xi_p0_closed_form(l, WaistRatio(g + h)));
    }
    CHECK(coupling::gamma_opt(-3) == coupling::gamma_opt(3));
    CHECK_THROWS_AS(coupling::gamma_opt(0), DomainError);
  }

  TEST_CASE("xi depends on |l| only") {
    for (int l = 1; l <= 5; ++l) {
      CHECK(coupling::xi_analytic(l, 2, 3, WaistRatio(0.7)) ==
            coupling::xi_analytic(-l, 2, 3, WaistRatio(0.7)));
    }
  }

  TEST_CASE("xi is smooth through gamma = 2") {
    for (int l : {0, 1, 3}) {
      for (int p : {0, 2, 4}) {
        for (int pp : {0, 1, 3}) {
          const double h = 1e-3;
          const double lo = coupling::xi_analytic(l, p, pp, WaistRatio(2.0 - h));
          const double mid = coupling::xi_analytic(l, p, pp, WaistRatio(2.0));
          const double hi = coupling::xi_analytic(l, p, pp, WaistRatio(2.0 + h));
          CAPTURE(l);
          CAPTURE(p);
          CAPTURE(pp);
          CHECK(std::isfinite(mid));
          CHECK(agrees(mid, oracle::xi(l, p, pp, 2.0)));
          // Second difference of a smooth function is O(h^2).
          CHECK(std::abs(lo - 2.0 * mid + hi) < 1e-5);
        }
      }
    }
  }

  TEST_CASE("quadrature of the overlap integral matches xi for l != 0") {
    for (auto [l, p, pp, g] : {std::tuple{1, 0, 0, 1.0}, {2, 3, 4, 0.5}, {1, 1, 1, 2.5},
                               {3, 2, 0, 0.1}, {1, 2, 2, 2.0}}) {
      const double w_a = 1.3;
      const double w_c = w_a * std::sqrt(g);
      const auto q = coupling::chi_quadrature({l, p}, {2 * l, pp}, w_c, w_a);
      const double xi = coupling::xi_analytic(l, p, pp, WaistRatio(g));
      CAPTURE(l);
      CAPTURE(p);
      CAPTURE(pp);
      CAPTURE(g);
      CHECK(std::abs(q.value - xi) <= std::max(1e-10, 1e-8 * std::abs(xi)));
    }
  }

  TEST_CASE("at l = 0 the literal overlap integral is four times the closed form") {
    // The l = 0 angular integral is 2 pi rather than pi / 2, and the delta
    // factors of the closed form do not compensate; see README.
    for (auto [p, pp, g] : {std::tuple{0, 0, 0.1}, {1, 2, 0.5}, {3, 1, 2.5}}) {
      const auto q = coupling::chi_quadrature({0, p}, {0, pp}, std::sqrt(g), 1.0);
      const double xi = coupling::xi_analytic(0, p, pp, WaistRatio(g));
      CHECK(q.value == doctest::Approx(4.0 * xi).epsilon(1e-9));
    }
  }

  TEST_CASE("overlap integral depends only on the waist ratio") {
    const auto a = coupling::chi_quadrature({2, 1}, {4, 2}, 0.6, 1.0);
    const auto b = coupling::chi_quadrature({2, 1}, {4, 2}, 1.8, 3.0);
    CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
  }

  TEST_CASE("selection rule") {
    CHECK(coupling::selection_allowed(2, 4));
    CHECK(coupling::selection_allowed(-2, 4));
    CHECK(coupling::selection_allowed(2, -4));
    CHECK(coupling::selection_allowed(0, 0));
    CHECK_FALSE(coupling::selection_allowed(2, 3));
    CHECK_FALSE(coupling::selection_allowed(1, 1));
    CHECK(std::abs(coupling::chi_quadrature({1, 1}, {3, 0}, 1.0, 1.0).value) < 1e-12);
    CHECK(std::abs(coupling::chi_quadrature({2, 0}, {1, 2}, 0.5, 1.0).value) < 1e-12);
  }

  // cos^2(l theta) = (1 + cos(2 l theta)) / 2 has a constant part, so the
  // literal overlap with an l' = 0 acoustic mode survives for every l.
  TEST_CASE("forbidden pairs vanish except the axisymmetric acoustic mode") {
    for (int l = 1; l <= 4; ++l) {
      for (int lp = -8; lp <= 8; ++lp) {
        if (std::abs(lp) == 2 * l) continue;
        CAPTURE(l);
        CAPTURE(lp);
        const double v = coupling::chi_quadrature({l, 1}, {lp, 1}, 0.8, 1.0).value;
        if (lp == 0) {
          CHECK(std::abs(v) > 1e-3);
        } else {
          CHECK(std::abs(v) < 1e-12);
        }
      }
    }
  }

  TEST_CASE("single-photon coupling") {
    CHECK(coupling::single_photon_coupling({1e-18, 2e15, 0.05}) ==
          doctest::Approx(1e-18 * 2e15 / 0.05));
    CHECK(coupling::single_photon_coupling({0.0, 1.0, 1.0}) == 0.0);
    CHECK_THROWS_AS(coupling::single_photon_coupling({1e-18, 2e15, 0.0}), DomainError);
    CHECK_THROWS_AS(coupling::single_photon_coupling({-1e-18, 2e15, 1.0}), DomainError);
    CHECK_THROWS_AS(coupling::single_photon_coupling({1e-18, -1.0, 1.0}), DomainError);
  }

  TEST_CASE("invalid waist ratios and indices are rejected") {
    CHECK_THROWS_AS(WaistRatio(0.0), DomainError);
    CHECK_THROWS_AS(WaistRatio(-1.0), DomainError);
    const double inf = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(WaistRatio{inf}, DomainError);
    CHECK_THROWS_AS(WaistRatio::from_waists(0.0, 1.0), DomainError);
    CHECK(WaistRatio::from_waists(2.0, 4.0).value() == 0.25);
    CHECK_THROWS_AS(coupling::xi_analytic(1, -1, 0, WaistRatio(1.0)), DomainError);
    CHECK_THROWS_AS(coupling::xi_analytic(1, 0, -2, WaistRatio(1.0)), DomainError);
  }
}
