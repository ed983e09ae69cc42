#include <cmath>

#include "core/errors.hpp"
#include "core/spaces.hpp"
#include "doctest.h"

using namespace hypsob;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("Lorentz-Zygmund legality conditions") {
  // p = q = 1 needs a0 >= 0 and ai <= 0
  CHECK(lz_is_norm(1.0, 1.0, 0.0, 0.0));
  CHECK(lz_is_norm(1.0, 1.0, 1.0, -1.0));
  CHECK_FALSE(lz_is_norm(1.0, 1.0, -0.1, 0.0));
  CHECK_FALSE(lz_is_norm(1.0, 1.0, 0.0, 0.1));
  // p in (1, inf) is free in A
  CHECK(lz_is_norm(2.0, 1.0, 3.0, -7.0));
  CHECK(lz_is_norm(1.5, kInf, -2.0, 5.0));
  // p = inf, q finite needs a0 + 1/q < 0
  CHECK(lz_is_norm(kInf, 2.0, -1.0, 0.0)); // -1 + 1/2 < 0
  CHECK_FALSE(lz_is_norm(kInf, 2.0, -0.5, 0.0));
  CHECK_FALSE(lz_is_norm(kInf, 1.0, -1.0, 3.0)); // -1 + 1 = 0 not < 0
  // p = q = inf needs a0 <= 0
  CHECK(lz_is_norm(kInf, kInf, 0.0, 2.5));
  CHECK(lz_is_norm(kInf, kInf, -1.0, 0.0));
  CHECK_FALSE(lz_is_norm(kInf, kInf, 0.5, 2.0));
  // q < 1 never legal through the p in (1, inf) route
  CHECK_FALSE(lz_is_norm(2.0, 0.5, 0.0, 0.0));
}

TEST_CASE("conjugate exponent endpoints are exact") {
  CHECK(conjugate_exponent(1.0) == kInf);
  CHECK(conjugate_exponent(kInf) == 1.0);
  CHECK(conjugate_exponent(2.0) == 2.0);
  CHECK(conjugate_exponent(1.5) == 3.0);
  CHECK(conjugate_exponent(3.0) == 1.5);
  CHECK(conjugate_exponent(1.25) == 5.0);
  CHECK(conjugate_exponent(1.125) == 9.0);
}

TEST_CASE("associate space round trip") {
  const SpaceSpec l22 = SpaceSpec::lorentz_zygmund(2.0, 2.0, 0.0, 0.0);
  const SpaceSpec l22a = associate_space(l22);
  CHECK(l22a.p == 2.0);
  CHECK(l22a.q == 2.0);
  CHECK(l22a.a0 == 0.0);

  const SpaceSpec l11 = SpaceSpec::lorentz_zygmund(1.0, 1.0, 1.0, -1.0);
  const SpaceSpec l11a = associate_space(l11);
  CHECK(l11a.p == kInf);
  CHECK(l11a.q == kInf);
  CHECK(l11a.a0 == -1.0);
  CHECK(l11a.ai == 1.0);

  // 200+ point sweep over exactly-representable parameters
  const double ps[] = {1.0, 1.125, 1.25, 1.5, 2.0, 3.0, 5.0, 9.0, kInf};
  const double as[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.5};
  int checked = 0;
  for (double p : ps) {
    for (double q : ps) {
      for (double a0 : as) {
        for (double ai : as) {
          if (!lz_is_norm(p, q, a0, ai)) continue;
          const SpaceSpec x = SpaceSpec::lorentz_zygmund(p, q, a0, ai);
          if (!lz_is_norm(conjugate_exponent(p), conjugate_exponent(q), -a0, -ai))
            continue;
          const SpaceSpec back = associate_space(associate_space(x));
          CHECK(back.p == p);
          CHECK(back.q == q);
          CHECK(back.a0 == a0);
          CHECK(back.ai == ai);
          ++checked;
        }
      }
    }
  }
  CHECK(checked >= 200);
}

TEST_CASE("sum and intersection associates swap") {
  const SpaceSpec x = SpaceSpec::intersection(
      {SpaceSpec::lebesgue(1.0), SpaceSpec::lebesgue(kInf)});
  const SpaceSpec xa = associate_space(x);
  CHECK(xa.kind == SpaceSpec::Kind::Sum);
  CHECK(xa.parts[0].p == kInf);
  CHECK(xa.parts[1].p == 1.0);
}

TEST_CASE("legality guards") {
  CHECK_THROWS_AS(check_legal(SpaceSpec::lebesgue(0.5)), Error);
  CHECK_THROWS_AS(check_legal(SpaceSpec::lorentz(1.0, 2.0)), Error);
  CHECK_THROWS_AS(check_legal(SpaceSpec::lorentz_zygmund(kInf, kInf, 0.5, 2.0)), Error);
  CHECK_NOTHROW(check_legal(SpaceSpec::lorentz(3.0, 1.0)));
  CHECK_NOTHROW(check_legal(SpaceSpec::z3(3, 5, 3.0)));
  CHECK_THROWS_AS(check_legal(SpaceSpec::z3(3, 5, 2.0)), Error); // needs ainf > 2
  CHECK_THROWS_AS(check_legal(SpaceSpec::z1(2, 5)), Error);      // Z1 needs odd m >= 3
  CHECK_NOTHROW(check_legal(SpaceSpec::z1(3, 5)));
  CHECK_NOTHROW(check_legal(SpaceSpec::z2(2, 3)));
}

TEST_CASE("quasinorm specs carry the ** flag") {
  CHECK(SpaceSpec::lorentz(2.0, 3.0).star_star);
  CHECK_FALSE(SpaceSpec::lorentz(3.0, 2.0).star_star);
  CHECK_FALSE(SpaceSpec::lorentz(2.0, 2.0).star_star);
  CHECK_FALSE(SpaceSpec::lorentz(1.0, 1.0).star_star);
}

TEST_CASE("maximal operator boundedness on the LZ scale") {
  CHECK(maximal_operator_bounded(SpaceSpec::lebesgue(2.0)));
  CHECK_FALSE(maximal_operator_bounded(SpaceSpec::lebesgue(1.0)));
  CHECK(maximal_operator_bounded(SpaceSpec::lebesgue(kInf)));
  CHECK(maximal_operator_bounded_on_associate(SpaceSpec::lebesgue(1.0)));
  CHECK(maximal_operator_bounded_on_associate(SpaceSpec::lebesgue(2.0)));
  CHECK_FALSE(maximal_operator_bounded_on_associate(SpaceSpec::lebesgue(kInf)));
}

TEST_CASE("table weights evaluate as two-piece power-logs") {
  const LambdaWeight v1 = weight_v1(2.0, 2.0, 0.0, 0.0, 1, 3);
  // near zero: exponent (n - mp)/(np) - 1/q = (3-2)/6 - 1/2 = -1/3
  CHECK(v1(0.5) == doctest::Approx(std::pow(0.5, -1.0 / 3.0)));
  CHECK(v1(4.0) == doctest::Approx(1.0)); // 1/p - 1/q = 0
  const LambdaWeight v2 = weight_v2(3.0, 0.0, 0.0, 1, 3);
  CHECK(v2(0.5) ==
        doctest::Approx(std::pow(0.5, -1.0 / 3.0) / (1.0 + std::abs(std::log(0.5)))));
  const LambdaWeight v3 = weight_v3(3.0, 0.0, 1, 3);
  CHECK(v3(2.0) == doctest::Approx(std::pow(2.0, 1.0 / 3.0 - 1.0 / 3.0)));
}
