#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oamem/error.hpp"
#include "oamem/modes.hpp"
#include "oracle/exact.hpp"

using namespace oamem;

namespace {

// u_lp from its definition with an exact Laguerre factor.
double explicit_mode(int l, unsigned p, double w, double r, double theta) {
  const unsigned al = static_cast<unsigned>(std::abs(l));
  const double d = l == 0 ? 1.0 : 0.0;
  const double norm = std::sqrt(4.0 * std::tgamma(p + 1.0) /
                                ((1.0 + d) * std::numbers::pi * std::tgamma(al + p + 1.0)));
  const double x = 2.0 * r * r / (w * w);
  const double lag = oracle::to_double(oracle::laguerre(p, al, oracle::cpp_rational(x)));
  return norm / w * std::pow(std::numbers::sqrt2 * r / w, al) * lag * std::exp(-r * r / (w * w)) *
         std::cos(l * theta);
}

double overlap(const ModeIndex& a, const ModeIndex& b, double w) {
  const ModeGeometry geom{w, ModeRole::acoustic};
  return quadrature::converge({}, 8.0 * w, [&](const quadrature::PolarRule& rule) {
           double total = 0.0;
           for (std::size_t i = 0; i < rule.radial.nodes.size(); ++i) {
             const double r = rule.radial.nodes[i];
             double ang = 0.0;
             for (std::size_t j = 0; j < rule.angular.nodes.size(); ++j) {
               const double t = rule.angular.nodes[j];
               ang += rule.angular.weights[j] * modes::lg_mode_amplitude(a, geom, r, t) *
                      modes::lg_mode_amplitude(b, geom, r, t);
             }
             total += rule.radial.weights[i] * r * ang;
           }
           return total;
         })
      .value;
}

}  // namespace

TEST_SUITE("modes") {
  TEST_CASE("amplitude matches the defining expression") {
    for (int l : {-3, 0, 1, 4}) {
      for (unsigned p : {0u, 1u, 3u, 6u}) {
        for (double r : {0.0, 0.3, 1.1, 2.7}) {
          for (double theta : {0.0, 0.4, 2.0}) {
            const double w = 1.7;
            const double got =
                modes::lg_mode_amplitude({l, static_cast<int>(p)}, {w, ModeRole::acoustic}, r * w, theta);
            const double want = explicit_mode(l, p, w, r * w, theta);
            CAPTURE(l);
            CAPTURE(p);
            CAPTURE(r);
            CHECK(std::abs(got - want) <= 1e-13 * std::max(1.0, std::abs(want)));
          }
        }
      }
    }
  }

  TEST_CASE("amplitude is even in l and vanishes at the origin for l != 0") {
    const ModeGeometry g{0.8, ModeRole::optical};
    CHECK(modes::lg_mode_amplitude({3, 2}, g, 0.5, 0.7) ==
          modes::lg_mode_amplitude({-3, 2}, g, 0.5, 0.7));
    CHECK(modes::lg_mode_amplitude({2, 1}, g, 0.0, 0.3) == 0.0);
    CHECK(modes::lg_mode_amplitude({0, 1}, g, 0.0, 0.3) != 0.0);
  }

  TEST_CASE("modes are unit-normalized for several waists") {
    for (double w : {0.2, 1.0, 5.0}) {
      for (int l : {-2, 0, 3}) {
        for (int p : {0, 2, 5}) {
          const auto r = modes::mode_norm({l, p}, {w, ModeRole::acoustic});
          CAPTURE(w);
          CAPTURE(l);
          CAPTURE(p);
          CHECK(std::abs(r.value - 1.0) <= 1e-10);
        }
      }
    }
  }

  TEST_CASE("distinct radial orders are orthogonal") {
    CHECK(std::abs(overlap({2, 0}, {2, 1}, 1.0)) < 1e-11);
    CHECK(std::abs(overlap({1, 2}, {1, 4}, 1.3)) < 1e-11);
    CHECK(std::abs(overlap({0, 1}, {0, 3}, 0.7)) < 1e-11);
    CHECK(std::abs(overlap({1, 2}, {1, 2}, 1.3) - 1.0) < 1e-10);
  }

  TEST_CASE("invalid mode arguments are rejected") {
    CHECK_THROWS_AS(modes::lg_mode_amplitude({1, -1}, {1.0, ModeRole::acoustic}, 0.1, 0.0),
                    DomainError);
    CHECK_THROWS_AS(modes::lg_mode_amplitude({1, 0}, {0.0, ModeRole::acoustic}, 0.1, 0.0),
                    DomainError);
    CHECK_THROWS_AS(modes::lg_mode_amplitude({1, 0}, {1.0, ModeRole::acoustic}, -0.1, 0.0),
                    DomainError);
  }
}
