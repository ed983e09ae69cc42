#pragma once

#include <cstddef>
#include <vector>

namespace hypsob {

// Finite nonnegative simple function on (0, infinity): the value values[i]
// is taken on (breakpoints[i-1], breakpoints[i]] (with breakpoints[-1] := 0)
// and 0 beyond the last breakpoint.  Canonical form merges equal adjacent
// values and drops trailing zeros.  This is the exact-arithmetic test family.
class StepFunction {
public:
  StepFunction() = default;
  StepFunction(std::vector<double> breakpoints, std::vector<double> values);

  static StepFunction indicator(double a, double b); // chi_(a, b]
  static StepFunction zero() { return StepFunction(); }

  const std::vector<double>& breakpoints() const { return bp_; }
  const std::vector<double>& values() const { return val_; }
  std::size_t pieces() const { return val_.size(); }
  bool is_zero() const { return val_.empty(); }
  double support_end() const { return bp_.empty() ? 0.0 : bp_.back(); }

  double operator()(double t) const; // right-continuous-from-the-left pieces
  double max_value() const;

  // Lebesgue measure of {f > lambda}; exact.  lambda > 0 required.
  double distribution(double lambda) const;

  // Nonincreasing rearrangement; exact (sort value/measure pairs).
  StepFunction rearrange() const;
  bool is_nonincreasing() const;

  // int_0^t f, exact piecewise-linear evaluation.
  double integral_up_to(double t) const;
  double integral() const { return integral_up_to(support_end()); }

  // f**(t) = (1/t) int_0^t f*; t > 0.  Exact piecewise-rational value.
  double max_rearrange(double t) const;

  // D_a f = f(./a); breakpoints scale by a.  a > 0.
  StepFunction dilate(double a) const;

  StepFunction operator+(const StepFunction& other) const;
  StepFunction scaled(double c) const;

  // int_0^inf f g, exact (common refinement of breakpoints).
  double inner_product(const StepFunction& g) const;

private:
  void canonicalize();
  std::vector<double> bp_;
  std::vector<double> val_;
};

// Partial integrals of the subadditivity inequality
// int_0^t (f+g)* <= int_0^t f* + int_0^t g*: returns {lhs, rhs_f, rhs_g}.
struct SubadditivityGap {
  double lhs;
  double rhs_f;
  double rhs_g;
};
SubadditivityGap subadditivity_gap(const StepFunction& f, const StepFunction& g,
                                   double t);

} // namespace hypsob
