#pragma once

#include <functional>
#include <memory>
#include <variant>
#include <vector>

#include "core/grid_function.hpp"
#include "core/powerlog.hpp"
#include "core/pw_expr.hpp"
#include "core/step_function.hpp"

namespace hypsob {

// Uniform nonnegative-function carrier.  StepFunction and PwExpr support the
// exact paths; PowerLogFunction and GridFunction go through quadrature.
class Fn {
public:
  using Variant = std::variant<StepFunction, PwExpr, PowerLogFunction, GridFunction>;

  Fn() : v_(StepFunction::zero()) {}
  Fn(StepFunction f) : v_(std::move(f)) {}
  Fn(PwExpr f) : v_(std::move(f)) {}
  Fn(PowerLogFunction f) : v_(std::move(f)) {}
  Fn(GridFunction f) : v_(std::move(f)) {}

  const Variant& raw() const { return v_; }
  bool is_step() const { return std::holds_alternative<StepFunction>(v_); }
  bool is_expr() const { return std::holds_alternative<PwExpr>(v_); }
  const StepFunction& step() const { return std::get<StepFunction>(v_); }
  const PwExpr& expr() const { return std::get<PwExpr>(v_); }

  double operator()(double t) const;
  bool is_zero() const;

  double distribution(double lambda) const;
  Fn rearrange() const;
  double max_rearrange(double t) const; // f**(t)
  Fn dilate(double a) const;
  double integral_up_to(double t) const;

private:
  Variant v_;
};

// Nonincreasing view of a function (its rearrangement), with the end
// behavior every norm evaluation needs.  `value` is nonincreasing on
// (0, inf); when `support_end` > 0 the function vanishes beyond it.
struct DecreasingProfile {
  std::function<double(double)> value;
  std::vector<double> splits;       // kinks / knots, sorted
  double zero_limit = 0.0;          // sup f = lim_{t->0+}; +inf allowed
  ExpTriple at_zero{0.0, 0.0, 0.0}; // growth triple when zero_limit == inf
  double support_end = 0.0;         // 0 => unbounded support
  ExpTriple at_inf{0.0, 0.0, 0.0};  // decay triple when support unbounded
  bool exact = false;               // exact evaluation path (step / closed form)

  // cumulative integral int_0^t value; set up by make_profile
  std::function<double(double)> cumulative;

  double star_star(double t) const { return cumulative(t) / t; }
};

DecreasingProfile make_profile(const Fn& f);

// Numeric rearrangement of a piecewise-smooth function given by a callable
// with known split points; used for non-monotone exact expressions.  The
// monotone segments are decomposed once into value/measure cells so that
// star() is a lookup.
class NumericRearrangement {
public:
  NumericRearrangement(std::function<double(double)> eval,
                       std::vector<double> splits, double probe_min,
                       double probe_max, bool compact_support,
                       double support_end);

  double distribution(double lambda) const;
  double star(double t) const;
  double max_value() const { return max_value_; }
  double support_measure() const; // measure of {f > 0} (may be +inf)

private:
  struct Segment {
    double lo, hi;   // t-interval
    double vlo, vhi; // values at the ends (monotone in between)
  };
  void build_cells();
  std::function<double(double)> eval_;
  std::vector<Segment> segments_;
  // sorted nonincreasing step approximation: value_[i] on measures
  // (cum_measure_[i-1], cum_measure_[i]]
  std::vector<double> cell_value_;
  std::vector<double> cell_cum_measure_;
  double max_value_ = 0.0;
  bool compact_ = false;
  double support_end_ = 0.0;
};

} // namespace hypsob
