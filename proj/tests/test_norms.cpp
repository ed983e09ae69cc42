#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/norms.hpp"
#include "core/ops.hpp"
#include "core/quadrature.hpp"
#include "doctest.h"

using namespace hypsob;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

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

} // namespace

TEST_CASE("Lebesgue norms of the unit indicator") {
  const Fn chi{StepFunction::indicator(0.0, 1.0)};
  for (double p : {1.0, 1.5, 2.0, 7.0, kInf}) {
    const NormValue v = norm(SpaceSpec::lebesgue(p), chi);
    CHECK(v.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(v.cert == NormValue::Cert::Exact);
  }
}

TEST_CASE("Lorentz quasinorm closed form on indicators") {
  for (double a : {0.25, 1.0, 7.0}) {
    const Fn chi{StepFunction::indicator(0.0, a)};
    for (double p : {1.5, 2.0, 3.0}) {
      for (double q : {1.0, 2.0, 4.0}) {
        const double expected = std::pow(a, 1.0 / p) * std::pow(p / q, 1.0 / q);
        CHECK(lorentz_quasinorm_raw(p, q, chi).value ==
              doctest::Approx(expected).epsilon(1e-12));
        if (q <= p) {
          CHECK(norm(SpaceSpec::lorentz(p, q), chi).value ==
                doctest::Approx(expected).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("Lorentz norm with q > p uses the subadditive ** version") {
  const Fn chi{StepFunction::indicator(0.0, 1.0)};
  const double p = 2.0, q = 3.0;
  // || chi** ||: int_0^1 t^(q/p-1) + int_1^inf t^(q/p-1-q) in closed form
  const double expected =
      std::pow(p / q + 1.0 / (q * (1.0 - 1.0 / p)), 1.0 / q);
  const NormValue v = norm(SpaceSpec::lorentz(p, q), chi);
  CHECK(v.value == doctest::Approx(expected).epsilon(1e-9));
  // the raw quasinorm stays available and smaller
  CHECK(lorentz_quasinorm_raw(p, q, chi).value < v.value);
}

TEST_CASE("LZ norm against direct quadrature on a two step function") {
  const StepFunction f({0.5, 2.0}, {2.0, 0.5});
  const Fn fe{f};
  const SpaceSpec x = SpaceSpec::lorentz_zygmund(2.0, 1.0, 0.5, -0.5);
  const NormValue v = norm(x, fe);
  // independent oracle: direct quadrature of the defining integral
  QuadOptions opt;
  opt.rel_tol = 1e-12;
  const StepFunction star = f.rearrange();
  auto integrand = [&](double t) {
    const double w = std::pow(t, 1.0 / 2.0 - 1.0) *
                     std::pow(ell(t), t < 1.0 ? 0.5 : -0.5);
    return w * star(t);
  };
  double expected = integrate_pos(integrand, 0.0, 0.5, -0.5, opt);
  expected += integrate_pos(integrand, 0.5, 1.0, 0.0, opt);
  expected += integrate_pos(integrand, 1.0, 2.5, 0.0, opt);
  CHECK(v.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("Z3 norm formula") {
  // || f ||_Z3 = ||f||_inf + sup_{t >= 1} ell^(ainf - ceil(m/2)) f**
  const StepFunction f({1.0, 4.0}, {3.0, 1.0});
  const Fn fe{f};
  const int m = 3, n = 5;
  const double ainf = 3.0;
  const NormValue v = norm(SpaceSpec::z3(m, n, ainf), fe);
  // the weighted f** is maximal at the support-end kink t = 4, where
  // f**(4) = 6/4 and the weight is ell(4)^(ainf - ceil(m/2))
  const double expected = 3.0 + std::pow(ell(4.0), ainf - 2.0) * 1.5;
  double sup = 0.0;
  for (double t = 1.0; t < 1e8; t *= 1.01) {
    sup = std::max(sup, std::pow(ell(t), ainf - 2.0) * f.max_rearrange(t));
  }
  CHECK(v.value >= 3.0 + sup - 1e-9); // never below the scanned lower bound
  CHECK(v.value == doctest::Approx(expected).epsilon(1e-9));
}

TEST_CASE("norm axioms on random step functions") {
  std::mt19937_64 rng(2024);
  const std::vector<SpaceSpec> spaces = {
      SpaceSpec::lebesgue(1.0),
      SpaceSpec::lebesgue(2.0),
      SpaceSpec::lebesgue(kInf),
      SpaceSpec::lorentz(2.0, 1.0),
      SpaceSpec::lorentz(3.0, 2.0),
      SpaceSpec::lorentz(2.0, 3.0),
      SpaceSpec::lorentz_zygmund(2.0, 2.0, 1.0, -1.0),
      SpaceSpec::lorentz_zygmund(kInf, kInf, 0.0, 2.0),
      SpaceSpec::z2(2, 3),
      SpaceSpec::z3(3, 5, 3.0),
  };
  for (int trial = 0; trial < 12; ++trial) {
    const StepFunction f = random_step(rng);
    const StepFunction g = random_step(rng);
    for (const SpaceSpec& X : spaces) {
      const double nf = norm(X, Fn{f}).value;
      const double ng = norm(X, Fn{g}).value;
      // homogeneity
      CHECK(norm(X, Fn{f.scaled(3.5)}).value ==
            doctest::Approx(3.5 * nf).epsilon(1e-9));
      // monotonicity: f <= f + g
      const double nsum = norm(X, Fn{f + g}).value;
      CHECK(nsum >= nf * (1.0 - 1e-9));
      // triangle inequality
      CHECK(nsum <= (nf + ng) * (1.0 + 1e-8));
      // rearrangement invariance (exact for steps)
      CHECK(norm(X, Fn{f.rearrange()}).value == doctest::Approx(nf).epsilon(1e-10));
    }
  }
}

TEST_CASE("dilation bound") {
  std::mt19937_64 rng(77);
  const std::vector<SpaceSpec> spaces = {
      SpaceSpec::lebesgue(1.0), SpaceSpec::lebesgue(2.0),
      SpaceSpec::lorentz(3.0, 1.0),
      SpaceSpec::lorentz_zygmund(2.0, 2.0, 0.5, -0.5),
      SpaceSpec::z2(2, 3)};
  for (int trial = 0; trial < 8; ++trial) {
    const StepFunction f = random_step(rng);
    for (double a : {0.2, 0.5, 2.0, 8.0}) {
      for (const SpaceSpec& X : spaces) {
        const double lhs = norm(X, Fn{f.dilate(a)}).value;
        const double rhs = std::max(1.0, a) * norm(X, Fn{f}).value;
        CHECK(lhs <= rhs * (1.0 + 1e-9));
      }
    }
  }
}

TEST_CASE("Holder inequality") {
  const Fn chi{StepFunction::indicator(0.0, 1.0)};
  const auto [lhs, rhs] = holder_gap(chi, chi, SpaceSpec::lebesgue(2.0));
  CHECK(lhs == doctest::Approx(1.0));
  CHECK(rhs == doctest::Approx(1.0)); // Cauchy-Schwarz equality case

  const auto [zl, zr] = holder_gap(Fn{}, chi, SpaceSpec::lebesgue(2.0));
  CHECK(zl == 0.0);
  CHECK(zr == 0.0);

  std::mt19937_64 rng(13);
  const SpaceSpec x32 = SpaceSpec::lorentz(3.0, 2.0);
  for (int trial = 0; trial < 100; ++trial) {
    const Fn f{random_step(rng)};
    const Fn g{random_step(rng)};
    const auto [l, r] = holder_gap(f, g, x32);
    CHECK(l <= r * (1.0 + 1e-8) + 1e-12);
  }
}

TEST_CASE("associate norm lower bound") {
  const Fn chi{StepFunction::indicator(0.0, 1.0)};
  std::vector<Fn> family = {chi, Fn{StepFunction::indicator(0.0, 2.0)}};
  const NormValue lb = associate_norm_lower_bound(SpaceSpec::lebesgue(2.0), chi, family);
  CHECK(lb.cert == NormValue::Cert::LowerBound);
  CHECK(lb.value == doctest::Approx(1.0).epsilon(1e-10)); // sharp at g = f
  CHECK(associate_norm_lower_bound(SpaceSpec::lebesgue(2.0), Fn{}, family).value == 0.0);

  // X = L^1: nested narrow indicators approach ||f||_inf from below
  const StepFunction f({1.0, 2.0}, {1.0, 3.0});
  double prev = 0.0;
  for (double eps : {1.0, 0.3, 0.1, 0.01}) {
    std::vector<Fn> fam = {Fn{StepFunction::indicator(1.0, 1.0 + eps)}};
    const double v = associate_norm_lower_bound(SpaceSpec::lebesgue(1.0), Fn{f}, fam).value;
    CHECK(v >= prev - 1e-12);
    prev = v;
  }
  CHECK(prev == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("power-log membership decisions") {
  // (1+log t)^k / t on (1, inf) in L^(p'): true iff p' > 1
  for (int k : {0, 1, 2}) {
    PowerLogFunction g;
    g.gamma = 1.0;
    g.delta_inf = k;
    g.window = PowerLogFunction::Window::BeyondOne;
    CHECK(powerlog_membership(g, SpaceSpec::lebesgue(2.0)));
    CHECK(powerlog_membership(g, SpaceSpec::lebesgue(1.5)));
    CHECK_FALSE(powerlog_membership(g, SpaceSpec::lebesgue(1.0)));
  }
  // t^(-1+m/n) on (0,1) in L^(p'): true iff p'(1 - m/n) < 1
  {
    const int m = 1, n = 3;
    PowerLogFunction g;
    g.gamma = 1.0 - static_cast<double>(m) / n;
    g.window = PowerLogFunction::Window::UnitInterval;
    CHECK(powerlog_membership(g, SpaceSpec::lebesgue(1.0)));
    CHECK_FALSE(powerlog_membership(g, SpaceSpec::lebesgue(2.0))); // 2*(2/3) > 1
    // quadrature oracle: truncated L^p integrals stabilize iff member
    const Fn fe{g};
    const double n1 = truncated_norm(SpaceSpec::lebesgue(1.0), fe, 1.0);
    CHECK(std::isfinite(n1));
  }
  // constant on (1, inf) in L^inf: true
  {
    PowerLogFunction g;
    g.window = PowerLogFunction::Window::BeyondOne;
    CHECK(powerlog_membership(g, SpaceSpec::lebesgue(kInf)));
    CHECK_FALSE(powerlog_membership(g, SpaceSpec::lebesgue(2.0)));
  }
}

TEST_CASE("divergent norms come with certificates") {
  PowerLogFunction g; // 1/t on (1, inf)
  g.gamma = 1.0;
  g.window = PowerLogFunction::Window::BeyondOne;
  const NormValue v = norm(SpaceSpec::lebesgue(1.0), Fn{g});
  CHECK(v.value == kInf);
  REQUIRE(v.divergence.has_value());
  CHECK(v.divergence->at_infinity);
  CHECK(std::isfinite(v.divergence->truncated_value));
  CHECK(v.divergence->truncated_value > 1.0);
}

TEST_CASE("intersection and sum norms") {
  const Fn chi{StepFunction::indicator(0.0, 4.0)};
  const SpaceSpec both = SpaceSpec::intersection(
      {SpaceSpec::lebesgue(1.0), SpaceSpec::lebesgue(kInf)});
  CHECK(norm(both, chi).value == doctest::Approx(4.0).epsilon(1e-10));
  const SpaceSpec either = SpaceSpec::sum(SpaceSpec::lebesgue(1.0),
                                          SpaceSpec::lebesgue(kInf));
  const NormValue s = norm(either, chi);
  CHECK(s.cert == NormValue::Cert::UpperBound);
  CHECK(s.value <= 4.0 * (1.0 + 1e-9)); // whole function in L^1 costs 4
  CHECK(s.value <= 1.0 + 3.0 + 1e-9);   // any split obeys the bound too
  CHECK(s.value > 0.0);
}

TEST_CASE("sum and intersection duality as a two-sided ratio over a family") {
  // (X + Y)' = X' ^ Y': compare sum-norm upper bound against the associate
  // lower bound through the intersection
  std::mt19937_64 rng(5);
  const SpaceSpec x = SpaceSpec::lebesgue(1.0);
  const SpaceSpec y = SpaceSpec::lebesgue(2.0);
  const SpaceSpec sum = SpaceSpec::sum(x, y);
  const SpaceSpec inter = SpaceSpec::intersection(
      {SpaceSpec::lebesgue(kInf), SpaceSpec::lebesgue(2.0)});
  double lo = kInf, hi = 0.0;
  std::vector<Fn> family;
  for (int i = 0; i < 12; ++i) family.push_back(Fn{random_step(rng)});
  for (const Fn& f : family) {
    // Holder through the pair: int f g <= ||f||_{X+Y} ||g||_{(X+Y)'}
    for (const Fn& g : family) {
      const double pairing = pairing_integral(f, g);
      const double bound = norm(sum, f).value * norm(inter, g).value;
      if (pairing <= 0.0) continue;
      const double ratio = bound / pairing;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  CHECK(lo >= 1.0 - 1e-8); // Holder direction always holds
  CHECK(std::isfinite(hi));
}

TEST_CASE("LZ duality: lower bound stays below the conjugate norm") {
  std::mt19937_64 rng(31);
  const SpaceSpec x = SpaceSpec::lorentz_zygmund(2.0, 2.0, 0.5, -0.5);
  const SpaceSpec xa = associate_space(x);
  std::vector<Fn> family;
  for (int i = 0; i < 20; ++i) family.push_back(Fn{random_step(rng)});
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Fn f{random_step(rng)};
    const double lower = associate_norm_lower_bound(x, f, family).value;
    const double upper = norm(xa, f).value;
    CHECK(lower <= upper * (1.0 + 1e-8));
    if (lower > 0.0) worst = std::max(worst, upper / lower);
  }
  CHECK(std::isfinite(worst)); // finite recorded ratio over the family
}
