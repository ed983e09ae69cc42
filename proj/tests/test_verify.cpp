#include <cmath>

#include "core/errors.hpp"
#include "core/families.hpp"
#include "core/ops.hpp"
#include "core/verify.hpp"
#include "doctest.h"

using namespace hypsob;
using namespace hypsob::verify;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> log_grid(double lo, double hi, int steps) {
  std::vector<double> g;
  for (int i = 0; i <= steps; ++i)
    g.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / steps));
  return g;
}
} // namespace

TEST_CASE("profile of the first-order stage") {
  Dimension d3(3);
  const StepFunction f = StepFunction::indicator(1.0, 2.0);
  const RadialProfile prof = build_profile(1, f, d3);
  CHECK(prof.value(2.0) == 0.0);
  CHECK(prof.value(2.5) == 0.0);
  CHECK(prof.value(0.5) > 0.0);
  CHECK(prof.value(1.5) > 0.0);
  // monotone nonincreasing
  CHECK(prof.value(0.2) >= prof.value(0.8));
  // zero source gives the zero profile
  const RadialProfile zero = build_profile(2, StepFunction::zero(), d3);
  CHECK(zero.value(1.0) == 0.0);
  // support touching zero is inadmissible
  CHECK_THROWS_AS(build_profile(1, StepFunction::indicator(0.0, 1.0), d3), Error);
}

TEST_CASE("sinh-kernel chain brackets the model chain") {
  const auto grid = log_grid(1e-4, 1e4, 60);
  for (int n : {3, 5}) {
    Dimension dim(n);
    for (int m = 1; m < std::min(n, 4); ++m) {
      const StepFunction f({1.0, 3.0}, {0.0, 1.5});
      const KernelBracket b = tilde_model_bracket(m, f, dim, grid);
      CHECK(b.lower > 0.0);
      CHECK(std::isfinite(b.upper));
      CHECK(b.upper >= b.lower);
      CHECK(b.upper / b.lower < 100.0);
    }
  }
}

TEST_CASE("radial Laplacian matches the source on a smooth bump") {
  Dimension d3(3);
  // C-infinity bump supported on (1, 2) in the volume variable
  auto bump = [](double t) {
    const double x = 2.0 * (t - 1.5);
    if (std::abs(x) >= 1.0) return 0.0;
    return std::exp(-1.0 / (1.0 - x * x));
  };
  // r-grid covering the image of t in (1.05, 1.95)
  std::vector<double> rg;
  for (double t = 1.08; t < 1.95; t += 0.06) {
    const double s = inverse_volume(d3, t);
    rg.push_back(std::tanh(0.5 * s));
  }
  const LaplacianCheck chk = radial_laplacian(d3, bump, 1.0, 2.0, rg);
  CHECK(chk.max_rel_error < 1e-3);
  // zero source: Laplacian vanishes where f does
  const LaplacianCheck zero =
      radial_laplacian(d3, [](double) { return 0.0; }, 1.0, 2.0, rg);
  for (double v : zero.finite_difference) CHECK(std::abs(v) < 1e-8);
}

TEST_CASE("gradient norm identity through the measure-preserving pullback") {
  Dimension d3(3);
  const StepFunction f = StepFunction::indicator(1.0, 2.0);
  const auto [lhs, rhs] = gradient_norm_identity(2, SpaceSpec::lebesgue(2.0), f, d3);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  // c_{3,2} = n w_n = 4 pi and ||chi||_2 = 1
  CHECK(rhs == doctest::Approx(4.0 * M_PI).epsilon(1e-12));
  const auto [zl, zr] = gradient_norm_identity(2, SpaceSpec::lebesgue(2.0),
                                               StepFunction::zero(), d3);
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);
}

TEST_CASE("reduction ratio suite on the subcritical v1 row") {
  const int m = 1, n = 3;
  const SpaceSpec X = SpaceSpec::lebesgue(1.0);
  const SpaceSpec Y =
      SpaceSpec::classical_lorentz(1.0, weight_v1(1.0, 1.0, 0.0, 0.0, m, n));
  const SobolevCase c =
      reduction_ratio_suite(m, n, X, Y, 7, 60, ReductionOperator::S);
  CHECK(c.pass);
  CHECK(std::isfinite(c.empirical_constant));
  CHECK(c.empirical_constant > 0.0);
  CHECK(c.refinement_delta < 0.10);
  CHECK(c.witnesses.size() == 3);
}

TEST_CASE("a deliberately smaller target breaks on the witness ladder") {
  // strengthen the near-zero weight of v1: the indicator witnesses
  // chi_(0,a) with a -> 0 then blow the ratio up
  const int m = 1, n = 3;
  const SpaceSpec X = SpaceSpec::lebesgue(1.0);
  LambdaWeight w = weight_v1(1.0, 1.0, 0.0, 0.0, m, n);
  w.near_zero.power -= 0.25;
  const SpaceSpec Ybad = SpaceSpec::classical_lorentz(1.0, w);
  const OperatorSpec op = OperatorSpec::op_S(m, n);
  double prev = 0.0;
  bool growing = true;
  for (double a : {1.0, 1e-1, 1e-2, 1e-3}) {
    const Fn chi{StepFunction::indicator(0.0, a)};
    const double ratio =
        norm(Ybad, apply_operator(op, chi)).value / norm(X, chi).value;
    if (ratio <= prev * 1.5) growing = false;
    prev = ratio;
  }
  CHECK(growing);
}

TEST_CASE("limiting inequality suites") {
  // even L^1 case at (n, m) = (3, 2)
  const SobolevCase even = limiting_inequalities_check(LimitingCase::EvenL1, 3,
                                                       2, 11, 40);
  CHECK(even.pass);
  CHECK(std::isfinite(even.empirical_constant));
  // critical case at (5, 3)
  const SobolevCase crit = limiting_inequalities_check(LimitingCase::Critical,
                                                       5, 3, 11, 30);
  CHECK(crit.pass);
  // supercritical LZ with admissible alpha_inf
  const SobolevCase sup = limiting_inequalities_check(
      LimitingCase::SupercriticalLZ, 5, 3, 11, 30, 0.0, 3.0);
  CHECK(sup.pass);
  // rejection with a certificate at the boundary
  const SobolevCase rej = limiting_inequalities_check(
      LimitingCase::SupercriticalLZ, 5, 3, 11, 10, 0.0, 2.0);
  CHECK(rej.rejected);
  REQUIRE(rej.rejection.has_value());
  CHECK(rej.rejection->monotone);
  // parity guards
  CHECK_THROWS_AS(limiting_inequalities_check(LimitingCase::OddL1, 3, 2, 1, 5),
                  Error);
  CHECK_THROWS_AS(limiting_inequalities_check(LimitingCase::EvenL1, 5, 3, 1, 5),
                  Error);
}

TEST_CASE("Polya-Szego radial equality") {
  Dimension d3(3);
  // profile max(0, 1 - t)
  PSProfile tent;
  tent.value = [](double t) { return std::max(0.0, 1.0 - t); };
  tent.derivative = [](double t) { return t < 1.0 ? -1.0 : 0.0; };
  tent.support_end = 1.0;
  for (double p : {1.0, 2.0}) {
    const auto [lhs, rhs] = polya_szego_radial_check(tent, p, d3);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    CHECK(lhs > 0.0);
  }
  // constant profile: both sides vanish
  PSProfile flat;
  flat.value = [](double) { return 1.0; };
  flat.derivative = [](double) { return 0.0; };
  flat.support_end = 5.0;
  const auto [zl, zr] = polya_szego_radial_check(flat, 2.0, d3);
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);
  // profile built from the first-order kernel stage: the sinh factors cancel
  PSProfile stage;
  Dimension* dp = &d3;
  stage.value = [](double) { return 0.0; }; // value unused by the check
  stage.derivative = [dp](double t) {
    return (t > 1.0 && t < 2.0) ? -radial_kernel_1(*dp, t) : 0.0;
  };
  stage.support_end = 2.0;
  for (double p : {1.0, 2.0}) {
    const auto [lhs, rhs] = polya_szego_radial_check(stage, p, d3);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
    CHECK(lhs == doctest::Approx(d3.n_omega_n()).epsilon(1e-6));
  }
  // non monotone profiles are out of the equality scope
  PSProfile wiggle = tent;
  wiggle.nonincreasing = false;
  CHECK_THROWS_AS(polya_szego_radial_check(wiggle, 2.0, d3), Error);
}

TEST_CASE("potential estimate is an equality for the one-stage construction") {
  Dimension d3(3);
  // the invariant is stated for nonincreasing sources
  const StepFunction mono({2.0, 5.0}, {1.5, 0.5});
  const auto grid = log_grid(1e-2, 1e3, 25);
  const double gap = potential_estimate_gap(mono, d3, grid);
  CHECK(gap < 2e-2);
}

TEST_CASE("dilation norm estimates cross-check the Boyd decisions") {
  const auto family = family::random_nonincreasing_steps(3, 25);
  // L^2: ||D_a|| = a^(1/2), so log||D_a||/log a stays near 1/2 < 1
  for (double a : {4.0, 64.0, 1024.0}) {
    const double est = dilation_norm_estimate(SpaceSpec::lebesgue(2.0), a, family);
    CHECK(est <= std::sqrt(a) * (1.0 + 1e-9));
    CHECK(std::log(est) / std::log(a) < 1.0);
  }
  // L^1: ||D_a|| = a; the family realizes it exactly
  const double est1 = dilation_norm_estimate(SpaceSpec::lebesgue(1.0), 16.0, family);
  CHECK(est1 == doctest::Approx(16.0).epsilon(1e-9));
}
