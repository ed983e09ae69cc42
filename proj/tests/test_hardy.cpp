#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/hardy.hpp"
#include "core/quadrature.hpp"
#include "doctest.h"

using namespace hypsob;
using namespace hypsob::hardy;

namespace {

StepFunction random_step(std::mt19937_64& rng, int max_pieces = 5) {
  std::uniform_int_distribution<int> np(1, max_pieces);
  std::uniform_real_distribution<double> logu(-3.0, 3.0);
  std::uniform_real_distribution<double> val(0.0, 2.0);
  const int k = np(rng);
  std::vector<double> bp;
  for (int i = 0; i < k; ++i) bp.push_back(std::pow(10.0, logu(rng)));
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
  std::vector<double> vals;
  for (std::size_t i = 0; i < bp.size(); ++i) vals.push_back(val(rng));
  return StepFunction(bp, vals);
}

StepFunction random_nonincreasing_step(std::mt19937_64& rng, int max_pieces = 5) {
  const StepFunction f = random_step(rng, max_pieces);
  return f.rearrange();
}

} // namespace

TEST_CASE("derived order parameters") {
  CHECK(derive_k(1) == 0);
  CHECK(derive_k(2) == 0);
  CHECK(derive_k(3) == 1);
  CHECK(derive_k(4) == 1);
  CHECK(derive_k(5) == 2);
  CHECK(derive_beta(1) == 1);
  CHECK(derive_beta(2) == 2);
  CHECK(derive_beta(5) == 1);
}

TEST_CASE("kernel integral closed form") {
  Dimension d4(4), d3(3);
  CHECK(kernel_integral(2.0, 0.0, 1.0, d4) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(kernel_integral(1.3, 1.0, M_E, d4) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(kernel_integral(1.0, 0.125, 4.0, d3) ==
        doctest::Approx(1.5 + std::log(4.0)).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_integral(1.0, 2.0, 1.0, d3), Error);
  CHECK_THROWS_AS(kernel_integral(0.0, 0.0, 1.0, d3), Error);
  CHECK(kernel_integral(0.0, 1.0, M_E, d3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("kernel integral agrees with quadrature on random parameters") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> dims(2, 8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  for (int trial = 0; trial < 100; ++trial) {
    Dimension dim(dims(rng));
    const double alpha = 0.05 + (dim.n - 0.1) * unit(rng);
    const double a = std::pow(10.0, -5.0 + 9.0 * unit(rng));
    const double b = a * std::pow(10.0, 4.0 * unit(rng));
    const double closed = kernel_integral(alpha, a, b, dim);
    // branch-aware oracle: split the quadrature at the kink t = 1
    auto integrand = [&](double t) { return phi(alpha, t, dim); };
    const double hint = -1.0 + alpha / dim.n;
    double quad = 0.0;
    if (a < 1.0) quad += integrate_pos(integrand, a, std::min(b, 1.0), hint, opt);
    if (b > 1.0) quad += integrate_pos(integrand, std::max(a, 1.0), b, hint, opt);
    CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
  }
}

TEST_CASE("R_m of an indicator matches its closed form") {
  Dimension d5(5);
  const double m = 2.0;
  const double a = 3.0;
  const PwExpr r = apply_R(m, PwExpr::from_step(StepFunction::indicator(0.0, a)), d5);
  for (double t : {0.1, 0.9, 1.0, 2.0, 2.9}) {
    const double expected = t < 1.0 ? std::pow(t, m / d5.n)
                            : (t < a ? 1.0 : a / t);
    CHECK(r(t) == doctest::Approx(expected).epsilon(1e-13));
  }
  CHECK(r(6.0) == doctest::Approx(a / 6.0).epsilon(1e-13));
}

TEST_CASE("P of an indicator is its maximal rearrangement") {
  Dimension d3(3);
  const StepFunction chi = StepFunction::indicator(0.0, 2.0);
  const PwExpr p = apply_P(PwExpr::from_step(chi), d3);
  for (double t : {0.5, 1.0, 2.0, 5.0, 40.0}) {
    CHECK(p(t) == doctest::Approx(chi.max_rearrange(t)).epsilon(1e-13));
  }
  CHECK(apply_P(PwExpr::zero(), d3).is_zero());
}

TEST_CASE("H_1 and H_0 of indicators") {
  Dimension d3(3);
  const PwExpr h1 = apply_H(1.0, PwExpr::from_step(StepFunction::indicator(0.0, 1.0)), d3);
  for (double t : {0.1, 0.5, 0.9}) {
    CHECK(h1(t) == doctest::Approx(d3.n * (1.0 - std::pow(t, 1.0 / d3.n))).epsilon(1e-13));
  }
  CHECK(h1(1.5) == 0.0);
  const double a = 4.0;
  const PwExpr h0 = apply_H(0.0, PwExpr::from_step(StepFunction::indicator(0.0, a)), d3);
  for (double t : {0.5, 1.0, 3.0}) {
    CHECK(h0(t) == doctest::Approx(std::log(a / t)).epsilon(1e-13));
  }
  CHECK(apply_H(1.0, PwExpr::zero(), d3).is_zero());
}

TEST_CASE("T_1 equals S_1 equals H_1 exactly") {
  Dimension d3(3);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 10; ++trial) {
    const StepFunction f = random_step(rng);
    const PwExpr fe = PwExpr::from_step(f);
    const PwExpr t1 = apply_T(1, fe, d3);
    const PwExpr s1 = apply_S(1, fe, d3);
    const PwExpr h1 = apply_H(1.0, fe, d3);
    for (double t = 1e-3; t < 1e4; t *= 5.0) {
      CHECK(t1(t) == doctest::Approx(h1(t)).epsilon(1e-13));
      CHECK(s1(t) == doctest::Approx(h1(t)).epsilon(1e-13));
    }
  }
}

TEST_CASE("T_2 composition agrees with the Fubini split") {
  // (H_2 o P) f(t) = (int_t^inf phi_2(s)/s ds) F(t) + int_t^inf f(s) (int_s^inf phi_2(tau)/tau dtau) ds
  Dimension d4(4);
  const StepFunction f = StepFunction::indicator(0.0, 1.0);
  const PwExpr t2 = apply_T(2, PwExpr::from_step(f), d4);
  const double n = d4.n;
  const double alpha = 2.0;
  auto outer = [&](double t) {
    return t < 1.0 ? n / (n - alpha) * std::pow(t, -1.0 + alpha / n) -
                         alpha / (n - alpha)
                   : 1.0 / t;
  };
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  for (double t : {0.2, 0.7, 1.3, 4.0}) {
    const double part1 = outer(t) * f.integral_up_to(t);
    const double part2 =
        t < 1.0 ? integrate([&](double s) { return f(s) * outer(s); }, t, 1.0, opt)
                : 0.0;
    CHECK(t2(t) == doctest::Approx(part1 + part2).epsilon(1e-9));
  }
}

TEST_CASE("S_3 vanishes beyond the support") {
  Dimension d5(5);
  const PwExpr s3 = apply_S(3, PwExpr::from_step(StepFunction::indicator(0.0, 1.0)), d5);
  CHECK(s3(M_E) == 0.0);
  CHECK(s3(0.5) > 0.0);
  CHECK_THROWS_AS(apply_S(5, PwExpr::zero(), d5), Error);
  CHECK_THROWS_AS(apply_T(7, PwExpr::zero(), d5), Error);
}

TEST_CASE("iterated closed forms match literal composition") {
  std::mt19937_64 rng(23);
  Dimension d5(5);
  for (int j = 0; j <= 3; ++j) {
    for (int trial = 0; trial < 12; ++trial) {
      const StepFunction f = random_step(rng);
      const PwExpr fe = PwExpr::from_step(f);
      const double alpha = 2.0, beta = 1.0;
      PwExpr lit = fe;
      for (int i = 0; i < j; ++i) lit = apply_R(alpha, lit, d5);
      lit = apply_R(beta, lit, d5);
      const PwExpr closed = iterated_R(beta, alpha, j, fe, d5);
      PwExpr lith = apply_H(beta, fe, d5);
      for (int i = 0; i < j; ++i) lith = apply_H(alpha, lith, d5);
      const PwExpr closedh = iterated_H(alpha, j, beta, fe, d5);
      for (double t = 1e-3; t < 1e4; t *= 7.3) {
        const double scale = 1.0 + std::abs(lit(t));
        CHECK(std::abs(closed(t) - lit(t)) <= 1e-9 * scale);
        const double scaleh = 1.0 + std::abs(lith(t));
        CHECK(std::abs(closedh(t) - lith(t)) <= 1e-9 * scaleh);
      }
    }
  }
}

TEST_CASE("iterated R of the unit indicator dominates the log power lower bound") {
  Dimension d5(5);
  const int k = 1;
  const PwExpr r = iterated_R(2.0, 2.0, k, PwExpr::from_step(StepFunction::indicator(0.0, 1.0)), d5);
  // on (1, inf) the value is bounded below by c (1 + log t)^k / t
  double cmin = 1e300;
  for (double t = 2.0; t < 1e6; t *= 3.0) {
    cmin = std::min(cmin, r(t) * t / std::pow(1.0 + std::log(t), k));
  }
  CHECK(cmin > 0.0);
}

TEST_CASE("adjointness") {
  Dimension d3(3);
  const StepFunction chi = StepFunction::indicator(0.0, 1.0);
  const auto [lhs, rhs] = adjointness_gap(1.0, chi, chi, d3);
  CHECK(lhs == doctest::Approx(0.75).epsilon(1e-13)); // n/(n+1) for n=3
  CHECK(rhs == doctest::Approx(0.75).epsilon(1e-13));
  const auto [zl, zr] = adjointness_gap(1.0, StepFunction::zero(), chi, d3);
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);

  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const StepFunction f = random_step(rng);
    const StepFunction g = random_step(rng);
    for (double alpha : {0.0, 1.0, 2.0}) {
      const auto [l, r] = adjointness_gap(alpha, f, g, d3);
      CHECK(std::abs(l - r) <= 1e-9 * (1.0 + std::abs(l)));
    }
  }
}

TEST_CASE("duality ratio stays in the analytic bracket") {
  std::mt19937_64 rng(37);
  for (int n : {3, 5}) {
    Dimension dim(n);
    for (int j = 1; j <= 3; ++j) {
      const double lo = std::pow((n - 2.0) / n, j);
      const double hi = std::pow(n / (n - 2.0), j);
      for (int trial = 0; trial < 20; ++trial) {
        const StepFunction f = random_step(rng);
        const StepFunction g = random_step(rng);
        const auto [a, b] = duality_pair(2.0, j, f, g, dim);
        if (b <= 0.0) continue;
        const double ratio = a / b;
        CHECK(ratio >= lo * (1.0 - 1e-9));
        CHECK(ratio <= hi * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("exact two-sided bound (R_a + H_a) f <= (H_a o P) f <= n/(n-a) (R_a + H_a) f") {
  Dimension d5(5);
  std::mt19937_64 rng(41);
  const double alpha = 2.0;
  for (int trial = 0; trial < 20; ++trial) {
    const StepFunction f = random_nonincreasing_step(rng);
    if (f.is_zero()) continue;
    const PwExpr fe = PwExpr::from_step(f);
    const PwExpr sum = apply_R(alpha, fe, d5) + apply_H(alpha, fe, d5);
    const PwExpr mid = apply_H(alpha, apply_P(fe, d5), d5);
    for (double t = 1e-4; t < 1e5; t *= 1.9) {
      CHECK(sum(t) <= mid(t) * (1.0 + 1e-11) + 1e-14);
      CHECK(mid(t) <= d5.n / (d5.n - alpha) * sum(t) * (1.0 + 1e-11) + 1e-14);
    }
  }
}

TEST_CASE("sandwich report at j = 0 needs no dilation shift") {
  Dimension d5(5);
  std::mt19937_64 rng(53);
  std::vector<double> grid;
  for (double t = 1e-4; t < 1e5; t *= 1.9) grid.push_back(t);
  for (int trial = 0; trial < 20; ++trial) {
    const StepFunction f = random_nonincreasing_step(rng);
    if (f.is_zero()) continue;
    const auto rep = sandwich_check(2.0, 0, f, grid, d5);
    // lower sum adds R_a f on top of the middle term; upper holds pointwise.
    CHECK(rep.lower_constant <= 2.0 + 1e-10);
    CHECK(rep.upper_constant <= 1.0 + 1e-10);
  }
}

TEST_CASE("sandwich constants are finite for j <= 2") {
  Dimension d5(5);
  std::mt19937_64 rng(43);
  std::vector<double> grid;
  for (double t = 1e-4; t < 1e5; t *= 1.7) grid.push_back(t);
  for (int j : {1, 2}) {
    for (int trial = 0; trial < 10; ++trial) {
      const StepFunction f = random_nonincreasing_step(rng);
      if (f.is_zero()) continue;
      const auto rep = sandwich_check(2.0, j, f, grid, d5);
      CHECK(std::isfinite(rep.lower_constant));
      CHECK(std::isfinite(rep.upper_constant));
      CHECK(rep.upper_constant > 0.0);
    }
  }
}

TEST_CASE("T_m output is nonincreasing") {
  Dimension d5(5);
  std::mt19937_64 rng(47);
  for (int m : {1, 2, 3, 4}) {
    for (int trial = 0; trial < 8; ++trial) {
      const StepFunction f = random_step(rng);
      const PwExpr t = apply_T(m, PwExpr::from_step(f), d5);
      double prev = 1e300;
      for (double x = 1e-4; x < 1e5; x *= 1.31) {
        const double v = t(x);
        CHECK(v <= prev * (1.0 + 1e-11) + 1e-13);
        prev = v;
      }
    }
  }
}
