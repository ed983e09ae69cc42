#include "core/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace hypsob {

namespace {

// Integral of the log-linear interpolant between (t0,v0) and (t1,v1):
// f(e^u) = v0 + (v1-v0)(u-u0)/(u1-u0), so int f dt = int e^u f(u) du.
double cell_integral(double t0, double v0, double t1, double v1) {
  const double u0 = std::log(t0), u1 = std::log(t1);
  const double du = u1 - u0;
  if (du <= 0.0) return 0.0;
  const double slope = (v1 - v0) / du;
  // antiderivative of e^u (a + b u) is e^u (a + b u - b)
  auto anti = [&](double u) {
    const double a = v0 + slope * (u - u0);
    return std::exp(u) * (a - slope);
  };
  return anti(u1) - anti(u0);
}

} // namespace

GridFunction::GridFunction(std::vector<double> grid, std::vector<double> samples,
                           TailBehavior tail)
    : grid_(std::move(grid)), samples_(std::move(samples)), tail_(tail) {
  if (grid_.size() != samples_.size() || grid_.size() < 2)
    throw_domain("GridFunction: need matching grid/samples with >= 2 points");
  double prev = 0.0;
  for (double t : grid_) {
    if (!(t > prev) || !std::isfinite(t))
      throw_domain("GridFunction: grid must be strictly increasing and positive");
    prev = t;
  }
  for (double v : samples_) {
    if (!(v >= 0.0) || !std::isfinite(v))
      throw_domain("GridFunction: samples must be finite and nonnegative");
  }
}

GridFunction GridFunction::sample(const std::function<double(double)>& f,
                                  TailBehavior tail, std::size_t points,
                                  double t_min, double t_max) {
  if (points < 2) throw_domain("GridFunction::sample: need >= 2 points");
  std::vector<double> grid(points), vals(points);
  const double ratio = std::log(t_max / t_min) / (points - 1);
  for (std::size_t i = 0; i < points; ++i) {
    grid[i] = t_min * std::exp(ratio * i);
    vals[i] = f(grid[i]);
  }
  return GridFunction(std::move(grid), std::move(vals), tail);
}

double GridFunction::operator()(double t) const {
  if (!(t > 0.0)) throw_domain("GridFunction eval: t must be positive");
  if (t <= grid_.front()) return samples_.front();
  if (t >= grid_.back()) {
    switch (tail_.kind) {
      case TailBehavior::Kind::Zero:
        return t == grid_.back() ? samples_.back() : 0.0;
      case TailBehavior::Kind::PowerLog:
        return samples_.back() * std::pow(t / grid_.back(), tail_.power) *
               std::pow(ell(t) / ell(grid_.back()), tail_.logexp);
      case TailBehavior::Kind::Unknown:
        if (t == grid_.back()) return samples_.back();
        throw_resolution("GridFunction eval beyond range with unknown tail");
    }
  }
  const auto it = std::lower_bound(grid_.begin(), grid_.end(), t);
  const std::size_t hi = static_cast<std::size_t>(it - grid_.begin());
  const std::size_t lo = hi - 1;
  const double w =
      std::log(t / grid_[lo]) / std::log(grid_[hi] / grid_[lo]);
  return samples_[lo] + w * (samples_[hi] - samples_[lo]);
}

double GridFunction::max_value() const {
  return *std::max_element(samples_.begin(), samples_.end());
}

bool GridFunction::tail_consistent() const {
  const std::size_t n = grid_.size();
  switch (tail_.kind) {
    case TailBehavior::Kind::Unknown:
      return true;
    case TailBehavior::Kind::Zero:
      return samples_.back() <= 0.1 * (max_value() + 1e-300);
    case TailBehavior::Kind::PowerLog: {
      // predict the last samples from an anchor a few nodes in
      const std::size_t anchor = n >= 5 ? n - 5 : 0;
      for (std::size_t i = anchor + 1; i < n; ++i) {
        const double pred = samples_[anchor] *
                            std::pow(grid_[i] / grid_[anchor], tail_.power) *
                            std::pow(ell(grid_[i]) / ell(grid_[anchor]),
                                     tail_.logexp);
        if (std::abs(pred - samples_[i]) > 0.1 * (samples_[i] + 1e-300))
          return false;
      }
      return true;
    }
  }
  return true;
}

double GridFunction::distribution(double lambda) const {
  if (!(lambda > 0.0)) throw_domain("distribution: lambda must be positive");
  double measure = 0.0;
  if (samples_.front() > lambda) measure += grid_.front();
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    const double v0 = samples_[i], v1 = samples_[i + 1];
    const double u0 = std::log(grid_[i]), u1 = std::log(grid_[i + 1]);
    if (v0 <= lambda && v1 <= lambda) continue;
    if (v0 > lambda && v1 > lambda) {
      measure += grid_[i + 1] - grid_[i];
      continue;
    }
    const double w = (lambda - v0) / (v1 - v0);
    const double uc = u0 + w * (u1 - u0);
    if (v0 > lambda)
      measure += std::exp(uc) - grid_[i];
    else
      measure += grid_[i + 1] - std::exp(uc);
  }
  if (tail_.kind == TailBehavior::Kind::PowerLog && samples_.back() > 0.0) {
    if (tail_.power >= 0.0) {
      if ((*this)(2.0 * grid_.back()) > lambda)
        return std::numeric_limits<double>::infinity();
    } else if (samples_.back() > lambda) {
      // decaying tail: bisect the crossing in log t
      double lo = grid_.back(), hi = 2.0 * grid_.back();
      while ((*this)(hi) > lambda && hi < 1e300) hi *= 2.0;
      for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        if ((*this)(mid) > lambda)
          lo = mid;
        else
          hi = mid;
      }
      measure += 0.5 * (lo + hi) - grid_.back();
    }
  } else if (tail_.kind == TailBehavior::Kind::Unknown && samples_.back() > lambda) {
    throw_resolution("distribution: unknown tail reached above level");
  }
  return measure;
}

bool GridFunction::is_nonincreasing() const {
  for (std::size_t i = 1; i < samples_.size(); ++i)
    if (samples_[i] > samples_[i - 1] * (1.0 + 1e-12)) return false;
  if (tail_.kind == TailBehavior::Kind::PowerLog && tail_.power > 0.0)
    return false;
  return true;
}

GridFunction GridFunction::rearrange() const {
  if (is_nonincreasing()) return *this;
  // Cells as constant pieces at their mean value, sorted by value; the tail
  // (when decaying) is discretized until it is negligible.
  struct Cell {
    double value, measure;
  };
  std::vector<Cell> cells;
  cells.push_back({samples_.front(), grid_.front()});
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    cells.push_back({0.5 * (samples_[i] + samples_[i + 1]),
                     grid_[i + 1] - grid_[i]});
  }
  const double vmax = max_value();
  if (tail_.kind == TailBehavior::Kind::PowerLog && samples_.back() > 0.0) {
    if (tail_.power >= 0.0)
      throw_divergence("rearrange: growing declared tail");
    double t = grid_.back();
    while ((*this)(t) > 1e-9 * vmax && t < 1e6 * grid_.back()) {
      const double next = t * 1.1;
      cells.push_back({0.5 * ((*this)(t) + (*this)(next)), next - t});
      t = next;
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.value > b.value; });
  // resample the sorted profile on the original grid
  std::vector<double> vals(grid_.size(), 0.0);
  std::size_t ci = 0;
  double covered = 0.0;
  for (std::size_t i = 0; i < grid_.size(); ++i) {
    const double t = grid_[i];
    while (ci < cells.size() && covered + cells[ci].measure < t) {
      covered += cells[ci].measure;
      ++ci;
    }
    vals[i] = ci < cells.size() ? cells[ci].value : 0.0;
  }
  TailBehavior tail = tail_;
  if (tail.kind == TailBehavior::Kind::PowerLog && tail.power >= 0.0)
    tail = TailBehavior::zero();
  return GridFunction(grid_, std::move(vals), tail);
}

GridFunction GridFunction::dilate(double a) const {
  if (!(a > 0.0)) throw_domain("dilate: scale must be positive");
  std::vector<double> grid(grid_);
  for (double& t : grid) t *= a;
  return GridFunction(std::move(grid), samples_, tail_);
}

double GridFunction::integral_up_to(double t) const {
  if (!(t >= 0.0)) throw_domain("integral_up_to: t must be >= 0");
  if (t == 0.0) return 0.0;
  double acc = samples_.front() * std::min(t, grid_.front());
  if (t <= grid_.front()) return acc;
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
    if (grid_[i] >= t) break;
    const double hi = std::min(grid_[i + 1], t);
    const double vhi = hi == grid_[i + 1] ? samples_[i + 1] : (*this)(hi);
    acc += cell_integral(grid_[i], samples_[i], hi, vhi);
  }
  if (t > grid_.back()) {
    switch (tail_.kind) {
      case TailBehavior::Kind::Zero:
        break;
      case TailBehavior::Kind::Unknown:
        throw_divergence("integral_up_to: unknown tail spec");
      case TailBehavior::Kind::PowerLog: {
        QuadOptions opt;
        opt.rel_tol = 1e-9;
        acc += integrate_pos([this](double s) { return (*this)(s); },
                             grid_.back(), t, tail_.power, opt);
        break;
      }
    }
  }
  return acc;
}

double GridFunction::integral() const {
  double acc = integral_up_to(grid_.back());
  switch (tail_.kind) {
    case TailBehavior::Kind::Zero:
      return acc;
    case TailBehavior::Kind::Unknown:
      throw_divergence("integral: unknown tail spec");
    case TailBehavior::Kind::PowerLog: {
      if (samples_.back() == 0.0) return acc;
      if (!integrable_at_inf({tail_.power, tail_.logexp, 0.0}))
        throw_divergence("integral: declared tail not integrable");
      if (tail_.power >= -1.0 - 1e-9) {
        // power == -1, logexp < -1: closed form of the anchored tail
        const double T = grid_.back();
        return acc + samples_.back() * T * ell(T) / (-1.0 - tail_.logexp);
      }
      QuadOptions opt;
      opt.rel_tol = 1e-9;
      return acc + integrate_to_inf([this](double s) { return (*this)(s); },
                                    grid_.back(), tail_.power, opt);
    }
  }
  return acc;
}

double GridFunction::max_rearrange(double t) const {
  if (!(t > 0.0)) throw_domain("max_rearrange: t must be positive");
  return rearrange().integral_up_to(t) / t;
}

} // namespace hypsob
