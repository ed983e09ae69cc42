#include "core/hyperbolic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace hypsob {

Dimension::Dimension(int n_) : n(n_) {
  if (n < 2) throw_domain("Dimension: n must be >= 2");
  omega_n_ = std::exp(0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n + 1.0));
}

namespace {

// 15 point Gauss-Legendre rule on [-1, 1]; nodes solved once at startup.
constexpr int kGL = 15;
double gl_x[kGL];
double gl_w[kGL];

void init_gl_impl() {
  // Roots of P_15 on [-1,1] by Newton from Chebyshev initial guesses.
  const int m = kGL;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      const double dp = m * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < m; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
    }
    const double dp = m * (x * p0 - p1) / (x * x - 1.0);
    gl_x[i] = x;
    gl_w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

[[maybe_unused]] const bool gl_ready = [] {
  init_gl_impl();
  return true;
}();

double sinh_pow(double t, int e) { return std::pow(std::sinh(t), e); }

} // namespace

double ball_volume(const Dimension& dim, double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw_domain("ball_volume: r must be finite and >= 0");
  if (r == 0.0) return 0.0;
  const int n = dim.n;
  const int panels = std::max(4, static_cast<int>(std::ceil(r)));
  const double h = r / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    double s = 0.0;
    for (int i = 0; i < kGL; ++i) {
      const double t = a + 0.5 * h * (gl_x[i] + 1.0);
      s += gl_w[i] * sinh_pow(t, n - 1);
    }
    total += 0.5 * h * s;
  }
  return dim.n_omega_n() * total;
}

double ball_volume_derivative(const Dimension& dim, double r) {
  return dim.n_omega_n() * sinh_pow(r, dim.n - 1);
}

namespace {

// Forward table of V on a fixed radius grid, built once per dimension by an
// incremental panel sweep.  inverse_volume seeds from the table and polishes
// by Newton with a single local panel per V evaluation.
struct VolumeTable {
  std::vector<double> r;
  std::vector<double> v;
};

const VolumeTable& volume_table(const Dimension& dim) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<VolumeTable>> tables;
  std::lock_guard<std::mutex> lock(mu);
  auto it = tables.find(dim.n);
  if (it != tables.end()) return *it->second;
  auto table = std::make_unique<VolumeTable>();
  const int n = dim.n;
  const double r_min =
      0.5 * std::pow(1e-16 / dim.unit_ball_volume(), 1.0 / n);
  const double r_max =
      (std::log(1e16 * (n - 1.0) / dim.n_omega_n()) + n * std::log(2.0)) /
          (n - 1.0) +
      2.0;
  // log-spaced below 1, linear above (log V is linear in r there)
  std::vector<double> rs;
  const int low = 1500, high = 2500;
  for (int i = 0; i <= low; ++i)
    rs.push_back(r_min * std::pow(1.0 / r_min, static_cast<double>(i) / low));
  for (int i = 1; i <= high; ++i)
    rs.push_back(1.0 + (r_max - 1.0) * static_cast<double>(i) / high);
  table->r = rs;
  table->v.resize(rs.size());
  auto integrand = [n](double t) { return sinh_pow(t, n - 1); };
  double acc = ball_volume(dim, rs[0]);
  table->v[0] = acc;
  for (std::size_t i = 1; i < rs.size(); ++i) {
    acc += dim.n_omega_n() * gauss15(integrand, rs[i - 1], rs[i]);
    table->v[i] = acc;
  }
  const VolumeTable& ref = *table;
  tables.emplace(dim.n, std::move(table));
  return ref;
}

} // namespace

double inverse_volume(const Dimension& dim, double v) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw_domain("inverse_volume: v must be finite and >= 0");
  if (v == 0.0) return 0.0;
  const int n = dim.n;
  const double won = dim.unit_ball_volume();
  const VolumeTable& tab = volume_table(dim);
  double r;
  if (v <= tab.v.front()) {
    // V(r) ~ omega_n r^n with a vanishing correction at these radii
    return std::pow(v / won, 1.0 / n);
  }
  if (v >= tab.v.back()) {
    // exponential regime seed plus Newton on the slow path
    r = (std::log(v * (n - 1.0) / dim.n_omega_n()) + (n - 1.0) * std::log(2.0)) /
        (n - 1.0);
    for (int i = 0; i < 80; ++i) {
      const double step = (ball_volume(dim, r) - v) / ball_volume_derivative(dim, r);
      r -= step;
      if (std::abs(step) <= 1e-15 * (1.0 + std::abs(r))) break;
    }
    return r;
  }
  const auto it = std::lower_bound(tab.v.begin(), tab.v.end(), v);
  const std::size_t hi = static_cast<std::size_t>(it - tab.v.begin());
  const std::size_t lo = hi == 0 ? 0 : hi - 1;
  // seed by log-log interpolation inside the bracketing cell
  const double w = std::log(v / tab.v[lo]) / std::log(tab.v[hi] / tab.v[lo]);
  r = tab.r[lo] * std::pow(tab.r[hi] / tab.r[lo], w);
  auto integrand = [n](double t) { return sinh_pow(t, n - 1); };
  for (int i = 0; i < 8; ++i) {
    // local V evaluation anchored at the table node
    const double vr = tab.v[lo] + dim.n_omega_n() * gauss15(integrand, tab.r[lo], r);
    const double step = (vr - v) / ball_volume_derivative(dim, r);
    r -= step;
    if (std::abs(step) <= 1e-15 * (1.0 + std::abs(r))) break;
  }
  return r;
}

double phi(double alpha, double t, const Dimension& dim) {
  if (!(alpha >= 0.0 && alpha < dim.n)) throw_domain("phi: alpha must lie in [0, n)");
  if (!(t > 0.0)) throw_domain("phi: t must be positive");
  if (t <= 1.0) return std::pow(t, -1.0 + alpha / dim.n);
  return 1.0 / t;
}

double radial_kernel_1(const Dimension& dim, double s) {
  const double rho = inverse_volume(dim, s);
  return std::pow(std::sinh(rho), 1 - dim.n);
}

double radial_kernel_2(const Dimension& dim, double s) {
  const double rho = inverse_volume(dim, s);
  return s * std::pow(std::sinh(rho), 2 - 2 * dim.n);
}

std::pair<double, double> kernel_asymptotics_check(const Dimension& dim,
                                                   double t_small,
                                                   double t_large) {
  if (!(t_small > 0.0 && t_small <= 1e-4)) throw_domain("kernel_asymptotics_check: t_small must be <= 1e-4");
  if (!(t_large >= 1e4)) throw_domain("kernel_asymptotics_check: t_large must be >= 1e4");
  const double r_small =
      radial_kernel_1(dim, t_small) / std::pow(t_small, -1.0 + 1.0 / dim.n);
  const double r_large = radial_kernel_1(dim, t_large) * t_large;
  return {r_small, r_large};
}

} // namespace hypsob
