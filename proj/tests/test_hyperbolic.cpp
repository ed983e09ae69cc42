#include <cmath>

#include "core/errors.hpp"
#include "core/hyperbolic.hpp"
#include "core/quadrature.hpp"
#include "doctest.h"

using namespace hypsob;

namespace {
// Closed-form volumes used as oracles only: the implementation integrates
// sinh^(n-1) for every n.
double volume2(double r) { return 2.0 * M_PI * (std::cosh(r) - 1.0); }
double volume3(double r) { return M_PI * (std::sinh(2.0 * r) - 2.0 * r); }
} // namespace

TEST_CASE("unit ball volume via log-Gamma") {
  CHECK(Dimension(2).unit_ball_volume() == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(Dimension(3).unit_ball_volume() ==
        doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
  CHECK(Dimension(4).unit_ball_volume() ==
        doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-14));
}

TEST_CASE("ball volume against closed forms") {
  Dimension d2(2), d3(3);
  CHECK(ball_volume(d2, 0.0) == 0.0);
  CHECK(ball_volume(d2, 1.0) == doctest::Approx(volume2(1.0)).epsilon(1e-12));
  CHECK(ball_volume(d2, 1.0) == doctest::Approx(3.4123).epsilon(1e-4));
  for (double r : {0.05, 0.3, 1.0, 3.0, 8.0, 20.0}) {
    CHECK(ball_volume(d2, r) == doctest::Approx(volume2(r)).epsilon(1e-12));
    CHECK(ball_volume(d3, r) == doctest::Approx(volume3(r)).epsilon(1e-12));
  }
}

TEST_CASE("small radius series limit") {
  Dimension d3(3);
  const double r = 1e-3;
  const double leading = d3.unit_ball_volume() * r * r * r;
  CHECK(ball_volume(d3, r) == doctest::Approx(leading).epsilon(1e-5));
}

TEST_CASE("ball volume rejects negative radius") {
  Dimension d3(3);
  CHECK_THROWS_AS(ball_volume(d3, -1.0), Error);
  CHECK_THROWS_AS(inverse_volume(d3, -0.5), Error);
}

TEST_CASE("inverse volume round trips") {
  for (int n : {2, 3, 5, 8}) {
    Dimension dim(n);
    CHECK(inverse_volume(dim, 0.0) == 0.0);
    for (double r : {0.1, 1.0, 10.0}) {
      const double v = ball_volume(dim, r);
      CHECK(inverse_volume(dim, v) == doctest::Approx(r).epsilon(1e-11));
    }
    for (double v = 1e-6; v < 1e6; v *= 100.0) {
      const double r = inverse_volume(dim, v);
      CHECK(ball_volume(dim, r) == doctest::Approx(v).epsilon(1e-10));
    }
  }
  Dimension d2(2);
  CHECK(inverse_volume(d2, 2.0 * M_PI * (std::cosh(2.0) - 1.0)) ==
        doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("V is strictly increasing") {
  Dimension d4(4);
  double prev = 0.0;
  for (double r = 0.05; r < 12.0; r *= 1.4) {
    const double v = ball_volume(d4, r);
    CHECK(v > prev);
    prev = v;
  }
}

TEST_CASE("phi kernel branches") {
  Dimension d4(4);
  CHECK(phi(2.0, 1.0, d4) == 1.0);
  CHECK(phi(2.0, 1.0 / 16.0, d4) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(phi(0.0, M_E, d4) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(phi(4.0, 1.0, d4), Error);
  CHECK_THROWS_AS(phi(-0.5, 1.0, d4), Error);
  CHECK_THROWS_AS(phi(1.0, 0.0, d4), Error);
}

TEST_CASE("kernel asymptotics approach the analytic limits") {
  SUBCASE("n=2 small") {
    Dimension d2(2);
    auto [small, large] = kernel_asymptotics_check(d2, 1e-6, 1e6);
    CHECK(small == doctest::Approx(std::sqrt(M_PI)).epsilon(0.01));
    CHECK(large == doctest::Approx(2.0 * d2.unit_ball_volume() / 1.0).epsilon(0.01));
  }
  SUBCASE("n=3 large") {
    Dimension d3(3);
    auto [small, large] = kernel_asymptotics_check(d3, 1e-6, 1e6);
    CHECK(large == doctest::Approx(2.0 * M_PI).epsilon(0.01));
    CHECK(small ==
          doctest::Approx(std::pow(d3.unit_ball_volume(), 2.0 / 3.0)).epsilon(0.01));
  }
  SUBCASE("finite positive at t=1") {
    Dimension d3(3);
    CHECK(radial_kernel_1(d3, 1.0) > 0.0);
    CHECK(std::isfinite(radial_kernel_1(d3, 1.0)));
    CHECK(radial_kernel_2(d3, 1.0) > 0.0);
  }
}

TEST_CASE("sinh kernels bracket the phi kernels on [1e-6, 1e6]") {
  for (int n : {2, 3, 5}) {
    Dimension dim(n);
    double lo1 = 1e300, hi1 = 0.0, lo2 = 1e300, hi2 = 0.0;
    for (double t = 1e-6; t <= 1e6; t *= 10.0) {
      const double r1 = radial_kernel_1(dim, t) / phi(1.0, t, dim);
      lo1 = std::min(lo1, r1);
      hi1 = std::max(hi1, r1);
      if (n > 2) { // phi_2 needs 2 < n
        const double r2 = radial_kernel_2(dim, t) / phi(2.0, t, dim);
        lo2 = std::min(lo2, r2);
        hi2 = std::max(hi2, r2);
      }
    }
    CHECK(lo1 > 0.0);
    CHECK(std::isfinite(hi1));
    if (n > 2) {
      CHECK(lo2 > 0.0);
      CHECK(std::isfinite(hi2));
    }
  }
}

TEST_CASE("adaptive quadrature sanity") {
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI, opt) ==
        doctest::Approx(2.0).epsilon(1e-12));
  // integrable singularity t^(-1/2) on (0, 1]
  CHECK(integrate_pos([](double t) { return 1.0 / std::sqrt(t); }, 0.0, 1.0,
                      -0.5, opt) == doctest::Approx(2.0).epsilon(1e-10));
  // tail integral of t^-2
  CHECK(integrate_to_inf([](double t) { return 1.0 / (t * t); }, 2.0, -2.0,
                         opt) == doctest::Approx(0.5).epsilon(1e-10));
}
