#include "core/hardy.hpp"

#include <cmath>

#include "core/errors.hpp"

namespace hypsob::hardy {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void check_order(int m, const Dimension& dim) {
  if (!(m >= 1 && m < dim.n)) throw_domain("operator order requires 1 <= m < n");
}

} // namespace

int derive_k(int m) { return (m % 2 == 1) ? (m - 1) / 2 : m / 2 - 1; }
int derive_beta(int m) { return (m % 2 == 1) ? 1 : 2; }

double kernel_integral(double alpha, double a, double b, const Dimension& dim) {
  if (!(alpha >= 0.0 && alpha < dim.n)) throw_domain("kernel_integral: alpha not in [0, n)");
  if (!(0.0 <= a && a <= b)) throw_domain("kernel_integral: need 0 <= a <= b");
  if (alpha == 0.0) {
    if (a == 0.0) throw_divergence("kernel_integral: log kernel diverges at 0");
    return std::log(b / a);
  }
  const double r = alpha / dim.n;
  const double c = dim.n / alpha;
  if (b <= 1.0) return c * (std::pow(b, r) - std::pow(a, r));
  if (a <= 1.0) return c * (1.0 - std::pow(a, r)) + std::log(b);
  return std::log(b / a);
}

PwExpr apply_R(double alpha, const PwExpr& f, const Dimension& dim) {
  return PwExpr::phi_kernel(alpha, dim) * f.cumulative_from_zero();
}

PwExpr apply_H(double alpha, const PwExpr& f, const Dimension& dim) {
  return (f * PwExpr::phi_kernel(alpha, dim)).cumulative_tail();
}

PwExpr apply_P(const PwExpr& f, const Dimension& dim) {
  return apply_R(0.0, f, dim);
}

PwExpr apply_Q(const PwExpr& f, const Dimension& dim) {
  return apply_H(0.0, f, dim);
}

PwExpr iterated_R(double beta, double alpha, int j, const PwExpr& f,
                  const Dimension& dim) {
  if (j < 0) throw_domain("iterated_R: j must be >= 0");
  if (j == 0) return apply_R(beta, f, dim);
  const PwExpr A = PwExpr::phi_antiderivative(alpha, dim);
  // (A(t) - A(s))^j = sum_i C(j,i) A(t)^i (-A(s))^(j-i)
  PwExpr total;
  PwExpr a_pow_t = PwExpr::constant(1.0);
  std::vector<PwExpr> neg_a_pow; // (-A)^i
  neg_a_pow.push_back(PwExpr::constant(1.0));
  for (int i = 1; i <= j; ++i) neg_a_pow.push_back(neg_a_pow.back() * A.scaled(-1.0));
  for (int i = 0; i <= j; ++i) {
    const PwExpr inner = (f * neg_a_pow[static_cast<std::size_t>(j - i)]).cumulative_from_zero();
    total = total + (a_pow_t * inner).scaled(binom(j, i));
    if (i < j) a_pow_t = a_pow_t * A;
  }
  return (PwExpr::phi_kernel(beta, dim) * total).scaled(1.0 / factorial(j));
}

PwExpr iterated_H(double alpha, int j, double beta, const PwExpr& f,
                  const Dimension& dim) {
  if (j < 0) throw_domain("iterated_H: j must be >= 0");
  if (j == 0) return apply_H(beta, f, dim);
  const PwExpr A = PwExpr::phi_antiderivative(alpha, dim);
  const PwExpr fphi = f * PwExpr::phi_kernel(beta, dim);
  // (A(s) - A(t))^j = sum_i C(j,i) (-A(t))^i A(s)^(j-i)
  PwExpr total;
  PwExpr neg_a_pow_t = PwExpr::constant(1.0);
  std::vector<PwExpr> a_pow;
  a_pow.push_back(PwExpr::constant(1.0));
  for (int i = 1; i <= j; ++i) a_pow.push_back(a_pow.back() * A);
  for (int i = 0; i <= j; ++i) {
    const PwExpr inner = (fphi * a_pow[static_cast<std::size_t>(j - i)]).cumulative_tail();
    total = total + (neg_a_pow_t * inner).scaled(binom(j, i));
    if (i < j) neg_a_pow_t = neg_a_pow_t * A.scaled(-1.0);
  }
  return total.scaled(1.0 / factorial(j));
}

PwExpr apply_T(int m, const PwExpr& f, const Dimension& dim) {
  check_order(m, dim);
  const int k = derive_k(m);
  PwExpr g = (m % 2 == 1) ? apply_H(1.0, f, dim) : f;
  const int stages = (m % 2 == 1) ? k : k + 1;
  for (int i = 0; i < stages; ++i) g = apply_H(2.0, apply_P(g, dim), dim);
  return g;
}

PwExpr apply_S(int m, const PwExpr& f, const Dimension& dim) {
  check_order(m, dim);
  const int k = derive_k(m);
  const int beta = derive_beta(m);
  return iterated_H(2.0, k, static_cast<double>(beta), f, dim);
}

std::pair<double, double> adjointness_gap(double alpha, const StepFunction& f,
                                          const StepFunction& g,
                                          const Dimension& dim) {
  const PwExpr fe = PwExpr::from_step(f);
  const PwExpr ge = PwExpr::from_step(g);
  const PwExpr lhs_prod = fe * apply_R(alpha, ge, dim);
  const PwExpr rhs_prod = apply_H(alpha, fe, dim) * ge;
  const double lhs = f.is_zero() ? 0.0 : lhs_prod.integral(0.0, f.support_end());
  const double rhs = g.is_zero() ? 0.0 : rhs_prod.integral(0.0, g.support_end());
  return {lhs, rhs};
}

std::pair<double, double> duality_pair(double alpha, int j,
                                       const StepFunction& f,
                                       const StepFunction& g,
                                       const Dimension& dim) {
  PwExpr opg = PwExpr::from_step(g);
  PwExpr opf = PwExpr::from_step(f);
  for (int i = 0; i < j; ++i) {
    opg = apply_H(alpha, apply_P(opg, dim), dim);
    opf = apply_H(alpha, apply_P(opf, dim), dim);
  }
  const double lhs = (PwExpr::from_step(f) * opg).integral(0.0, f.support_end());
  const PwExpr rhs_prod = opf * PwExpr::from_step(g);
  const double rhs = g.is_zero() ? 0.0 : rhs_prod.integral(0.0, g.support_end());
  return {lhs, rhs};
}

SandwichReport sandwich_check(double alpha, int j, const StepFunction& f,
                              const std::vector<double>& grid,
                              const Dimension& dim) {
  if (!(alpha > 0.0 && alpha < dim.n)) throw_domain("sandwich_check: alpha must be in (0, n)");
  const PwExpr fe = PwExpr::from_step(f);
  const PwExpr hp_part = iterated_H(alpha, j, alpha, apply_P(fe, dim), dim);
  const PwExpr r_part = iterated_R(alpha, alpha, j, fe, dim);
  PwExpr mid = fe;
  for (int i = 0; i <= j; ++i) mid = apply_H(alpha, apply_P(mid, dim), dim);
  const double shift = std::pow(2.0, j);
  SandwichReport rep{0.0, 0.0, grid.size()};
  for (double t : grid) {
    const double m = mid(t);
    if (m <= 0.0) continue;
    const double low = hp_part(t) + r_part(t);
    const double up = hp_part(t / shift) + r_part(shift * t);
    rep.lower_constant = std::max(rep.lower_constant, low / m);
    if (up > 0.0) rep.upper_constant = std::max(rep.upper_constant, m / up);
  }
  return rep;
}

} // namespace hypsob::hardy
