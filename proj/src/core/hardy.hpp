#pragma once

#include <utility>
#include <vector>

#include "core/hyperbolic.hpp"
#include "core/pw_expr.hpp"
#include "core/step_function.hpp"

namespace hypsob::hardy {

// Order-derived parameters: k = ceil(m/2 - 1), beta = 1 (m odd) / 2 (m even).
int derive_k(int m);
int derive_beta(int m);

// int_a^b phi_alpha in closed form (three branches); alpha = 0 uses the pure
// log branch and requires a > 0.
double kernel_integral(double alpha, double a, double b, const Dimension& dim);

// R_alpha f(t) = phi_alpha(t) int_0^t f        (P = R_0)
// H_alpha f(t) = int_t^inf f(s) phi_alpha(s) ds (Q = H_0)
PwExpr apply_R(double alpha, const PwExpr& f, const Dimension& dim);
PwExpr apply_H(double alpha, const PwExpr& f, const Dimension& dim);
PwExpr apply_P(const PwExpr& f, const Dimension& dim);
PwExpr apply_Q(const PwExpr& f, const Dimension& dim);

// Closed single-integral forms
//   (R_beta o R_alpha^j) f(t) = phi_beta(t)/j! int_0^t f(s) (int_s^t phi_alpha)^j ds
//   (H_alpha^j o H_beta) f(t) = 1/j! int_t^inf f(s) phi_beta(s) (int_t^s phi_alpha)^j ds
// expanded binomially through the anchored antiderivative of phi_alpha.
PwExpr iterated_R(double beta, double alpha, int j, const PwExpr& f,
                  const Dimension& dim);
PwExpr iterated_H(double alpha, int j, double beta, const PwExpr& f,
                  const Dimension& dim);

// T_m: (H_2 o P)^k o H_1 (m odd) / (H_2 o P)^(k+1) (m even); literal staging.
PwExpr apply_T(int m, const PwExpr& f, const Dimension& dim);
// S_m: H_2^k o H_1 (m odd) / H_2^(k+1) (m even); single-kernel closed form.
PwExpr apply_S(int m, const PwExpr& f, const Dimension& dim);

// (int f . R_alpha g, int H_alpha f . g): formally adjoint pair, exact.
std::pair<double, double> adjointness_gap(double alpha, const StepFunction& f,
                                          const StepFunction& g,
                                          const Dimension& dim);

// (int f . (H_alpha o P)^j g, int (H_alpha o P)^j f . g) for the duality
// ratio bracket ((n-alpha)/n)^j .. (n/(n-alpha))^j.
std::pair<double, double> duality_pair(double alpha, int j,
                                       const StepFunction& f,
                                       const StepFunction& g,
                                       const Dimension& dim);

// Pointwise two-sided bracket
//   (H_a^(j+1) o P)f(t) + R_a^(j+1) f(t)  <~  (H_a o P)^(j+1) f(t)
//   (H_a o P)^(j+1) f(t)  <~  (H_a^(j+1) o P)f(t/2^j) + R_a^(j+1) f(2^j t)
// evaluated on a logarithmic grid; returns the empirical constants.
struct SandwichReport {
  double lower_constant; // sup of (lower sum)/(middle)
  double upper_constant; // sup of (middle)/(shifted sum)
  std::size_t grid_size;
};
SandwichReport sandwich_check(double alpha, int j, const StepFunction& f,
                              const std::vector<double>& grid,
                              const Dimension& dim);

} // namespace hypsob::hardy
