#pragma once

#include <string>
#include <vector>

#include "core/hyperbolic.hpp"
#include "core/step_function.hpp"

namespace hypsob {

// Exact piecewise expressions built from terms  c * t^p * (ln t)^k.
// This family is closed under addition, multiplication, dilation and
// antiderivatives (including improper integrals with power decay), which is
// what makes the Hardy operator algebra on step functions exact: applying
// P, Q, R_alpha, H_alpha to a member stays inside the family.

struct PLTerm {
  double coef;
  double power;
  int logk; // nonnegative
};

using PLPoly = std::vector<PLTerm>; // canonical: sorted by (power, logk)

double poly_eval(const PLPoly& poly, double t);
PLPoly poly_add(const PLPoly& a, const PLPoly& b);
PLPoly poly_mul(const PLPoly& a, const PLPoly& b);
PLPoly poly_scale(const PLPoly& a, double c);
// Antiderivative in closed form: t^p ln^k t integrates to power-log terms
// (p != -1) or ln^(k+1) t / (k+1) (p == -1).
PLPoly poly_antiderivative(const PLPoly& a);

class PwExpr {
public:
  PwExpr() = default; // identically zero
  // Pieces polys[i] on (knots[i-1], knots[i]] with knots[-1] = 0 and a final
  // piece on (knots.back(), inf); polys.size() == knots.size() + 1.
  PwExpr(std::vector<double> knots, std::vector<PLPoly> polys);

  static PwExpr zero() { return PwExpr(); }
  static PwExpr constant(double c);
  static PwExpr from_step(const StepFunction& f);
  // min{t^(-1+alpha/n), 1/t}
  static PwExpr phi_kernel(double alpha, const Dimension& dim);
  // A_alpha(t) = int_1^t phi_alpha, anchored at 1.
  static PwExpr phi_antiderivative(double alpha, const Dimension& dim);
  // Single piece on (0, inf).
  static PwExpr single(PLPoly poly);

  bool is_zero() const;
  double operator()(double t) const;

  const std::vector<double>& knots() const { return knots_; }
  // polys()[i] lives on (knots[i-1], knots[i]], with knots[-1] = 0 and an
  // implicit final piece on (knots.back(), inf).
  const std::vector<PLPoly>& polys() const { return polys_; }

  PwExpr operator+(const PwExpr& other) const;
  PwExpr operator*(const PwExpr& other) const;
  PwExpr scaled(double c) const;
  PwExpr dilate(double a) const; // t -> f(t/a)

  // F(t) = int_0^t f; throws Divergence if f is not integrable at 0.
  PwExpr cumulative_from_zero() const;
  // G(t) = int_t^inf f; throws Divergence if the tail is not integrable.
  PwExpr cumulative_tail() const;

  double integral(double a, double b) const; // exact, b finite
  double integral_to_inf(double a) const;    // exact; throws on divergence
  bool tail_integrable() const;
  bool integrable_at_zero() const;

  // Leading behavior t^power ln^logk at an end of the axis (coef may be 0
  // when the expression vanishes near that end).
  struct Leading {
    double coef;
    double power;
    int logk;
  };
  Leading leading_at_zero() const;
  Leading leading_at_inf() const;

  // True iff there is T with f == 0 on (T, inf); then T = support end.
  bool has_compact_support() const;
  double support_end() const;

  std::string to_string() const;

private:
  void normalize();

  std::vector<double> knots_;
  std::vector<PLPoly> polys_; // size knots_.size() + 1
};

} // namespace hypsob
