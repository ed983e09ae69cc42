#include "core/step_function.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/errors.hpp"

namespace hypsob {

StepFunction::StepFunction(std::vector<double> breakpoints,
                           std::vector<double> values)
    : bp_(std::move(breakpoints)), val_(std::move(values)) {
  if (bp_.size() != val_.size())
    throw_domain("StepFunction: breakpoints/values size mismatch");
  double prev = 0.0;
  for (double t : bp_) {
    if (!(t > prev) || !std::isfinite(t))
      throw_domain("StepFunction: breakpoints must be strictly increasing and positive");
    prev = t;
  }
  for (double v : val_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw_domain("StepFunction: values must be finite and nonnegative");
  }
  canonicalize();
}

StepFunction StepFunction::indicator(double a, double b) {
  if (!(0.0 <= a && a < b)) throw_domain("indicator: need 0 <= a < b");
  if (a == 0.0) return StepFunction({b}, {1.0});
  return StepFunction({a, b}, {0.0, 1.0});
}

void StepFunction::canonicalize() {
  std::vector<double> bp, val;
  bp.reserve(bp_.size());
  val.reserve(val_.size());
  for (std::size_t i = 0; i < val_.size(); ++i) {
    if (!val.empty() && val.back() == val_[i]) {
      bp.back() = bp_[i]; // merge equal adjacent values
    } else {
      bp.push_back(bp_[i]);
      val.push_back(val_[i]);
    }
  }
  while (!val.empty() && val.back() == 0.0) {
    bp.pop_back();
    val.pop_back();
  }
  bp_ = std::move(bp);
  val_ = std::move(val);
}

double StepFunction::operator()(double t) const {
  if (!(t > 0.0)) throw_domain("StepFunction eval: t must be positive");
  auto it = std::lower_bound(bp_.begin(), bp_.end(), t);
  if (it == bp_.end()) return 0.0;
  return val_[static_cast<std::size_t>(it - bp_.begin())];
}

double StepFunction::max_value() const {
  double m = 0.0;
  for (double v : val_) m = std::max(m, v);
  return m;
}

double StepFunction::distribution(double lambda) const {
  if (!(lambda > 0.0)) throw_domain("distribution: lambda must be positive");
  double measure = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < val_.size(); ++i) {
    if (val_[i] > lambda) measure += bp_[i] - prev;
    prev = bp_[i];
  }
  return measure;
}

StepFunction StepFunction::rearrange() const {
  struct Piece {
    double value;
    double measure;
    std::size_t order;
  };
  std::vector<Piece> pieces;
  pieces.reserve(val_.size());
  double prev = 0.0;
  for (std::size_t i = 0; i < val_.size(); ++i) {
    pieces.push_back({val_[i], bp_[i] - prev, i});
    prev = bp_[i];
  }
  // Ties broken by breakpoint order: deterministic output.
  std::stable_sort(pieces.begin(), pieces.end(), [](const Piece& a, const Piece& b) {
    return a.value > b.value;
  });
  std::vector<double> bp, val;
  double acc = 0.0;
  for (const Piece& p : pieces) {
    if (p.value == 0.0) continue;
    acc += p.measure;
    bp.push_back(acc);
    val.push_back(p.value);
  }
  return StepFunction(std::move(bp), std::move(val));
}

bool StepFunction::is_nonincreasing() const {
  for (std::size_t i = 1; i < val_.size(); ++i)
    if (val_[i] > val_[i - 1]) return false;
  return true;
}

double StepFunction::integral_up_to(double t) const {
  if (!(t >= 0.0)) throw_domain("integral_up_to: t must be >= 0");
  double acc = 0.0;
  double prev = 0.0;
  for (std::size_t i = 0; i < val_.size(); ++i) {
    const double hi = std::min(bp_[i], t);
    if (hi <= prev) break;
    acc += val_[i] * (hi - prev);
    prev = bp_[i];
  }
  return acc;
}

double StepFunction::max_rearrange(double t) const {
  if (!(t > 0.0)) throw_domain("max_rearrange: t must be positive");
  return rearrange().integral_up_to(t) / t;
}

StepFunction StepFunction::dilate(double a) const {
  if (!(a > 0.0)) throw_domain("dilate: scale must be positive");
  std::vector<double> bp(bp_);
  for (double& t : bp) t *= a;
  return StepFunction(std::move(bp), val_);
}

StepFunction StepFunction::operator+(const StepFunction& other) const {
  std::set<double> cuts(bp_.begin(), bp_.end());
  cuts.insert(other.bp_.begin(), other.bp_.end());
  std::vector<double> bp, val;
  for (double t : cuts) {
    bp.push_back(t);
    val.push_back((*this)(t) + other(t));
  }
  return StepFunction(std::move(bp), std::move(val));
}

StepFunction StepFunction::scaled(double c) const {
  if (!(c >= 0.0)) throw_domain("scaled: factor must be nonnegative");
  std::vector<double> val(val_);
  for (double& v : val) v *= c;
  return StepFunction(bp_, std::move(val));
}

double StepFunction::inner_product(const StepFunction& g) const {
  std::set<double> cuts(bp_.begin(), bp_.end());
  cuts.insert(g.bp_.begin(), g.bp_.end());
  double acc = 0.0;
  double prev = 0.0;
  for (double t : cuts) {
    acc += (*this)(t) * g(t) * (t - prev);
    prev = t;
  }
  return acc;
}

SubadditivityGap subadditivity_gap(const StepFunction& f, const StepFunction& g,
                                   double t) {
  if (!(t > 0.0)) throw_domain("subadditivity_gap: t must be positive");
  const StepFunction sum = f + g;
  return {sum.rearrange().integral_up_to(t), f.rearrange().integral_up_to(t),
          g.rearrange().integral_up_to(t)};
}

} // namespace hypsob
