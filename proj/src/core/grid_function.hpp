#pragma once

#include <functional>
#include <vector>

#include "core/powerlog.hpp"

namespace hypsob {

// Declared behavior beyond the sampled range of a GridFunction.
struct TailBehavior {
  enum class Kind { Zero, PowerLog, Unknown } kind = Kind::Zero;
  double power = 0.0;  // value ~ last_sample * (t/t_edge)^power * (ell ratio)^logexp
  double logexp = 0.0;

  static TailBehavior zero() { return {Kind::Zero, 0.0, 0.0}; }
  static TailBehavior power_log(double p, double lg) {
    return {Kind::PowerLog, p, lg};
  }
  static TailBehavior unknown() { return {Kind::Unknown, 0.0, 0.0}; }
};

// Log-spaced sampled nonnegative function on [t_min, t_max] with a declared
// tail beyond t_max; constant extension below t_min.  The quadrature-backed
// stand-in for functions that leave the exact families.
class GridFunction {
public:
  GridFunction() = default;
  GridFunction(std::vector<double> grid, std::vector<double> samples,
               TailBehavior tail);

  // Default 2048 geometric points on [1e-8, 1e8].
  static GridFunction sample(const std::function<double(double)>& f,
                             TailBehavior tail, std::size_t points = 2048,
                             double t_min = 1e-8, double t_max = 1e8);

  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& samples() const { return samples_; }
  const TailBehavior& tail() const { return tail_; }

  double operator()(double t) const; // interpolated; tail rules beyond range
  double max_value() const;

  // Checks the 10% consistency of the declared tail against the last samples.
  bool tail_consistent() const;

  double distribution(double lambda) const; // grid-interpolated measure
  GridFunction rearrange() const;
  bool is_nonincreasing() const;
  GridFunction dilate(double a) const;

  double integral_up_to(double t) const; // refuses Unknown tail when needed
  double integral() const;
  double max_rearrange(double t) const; // f**(t) through the rearrangement

private:
  std::vector<double> grid_;
  std::vector<double> samples_;
  TailBehavior tail_;
};

} // namespace hypsob
