#pragma once

#include <utility>

namespace hypsob {

// Radial geometry of the n-dimensional hyperbolic space (Poincare ball
// model): ball volume V, its inverse rho, and the kernel functions
// phi_alpha(t) = min{t^(-1+alpha/n), 1/t}.

struct Dimension {
  int n;
  explicit Dimension(int n_);
  // Euclidean volume of the unit n-ball, computed through log-Gamma.
  double unit_ball_volume() const { return omega_n_; }
  double n_omega_n() const { return n * omega_n_; }

private:
  double omega_n_;
};

// V(r) = n omega_n int_0^r sinh(t)^(n-1) dt.  Composite Gauss-Legendre;
// deterministic and accurate to ~1e-13 relative.
double ball_volume(const Dimension& dim, double r);

// Derivative V'(r) = n omega_n sinh(r)^(n-1).
double ball_volume_derivative(const Dimension& dim, double r);

// Inverse of V: bracketing bisection seeded from the small/large volume
// asymptotics, polished by Newton.  Relative tolerance ~1e-13.
double inverse_volume(const Dimension& dim, double v);

// phi_alpha(t) = min{t^(-1+alpha/n), t^(-1)}, 0 <= alpha < n, t > 0.
double phi(double alpha, double t, const Dimension& dim);

// Exact sinh kernels of the volume variable:
//   radial_kernel_1(s) = sinh(rho(s))^(1-n)        (comparable to phi_1)
//   radial_kernel_2(s) = s * sinh(rho(s))^(2-2n)   (comparable to phi_2)
double radial_kernel_1(const Dimension& dim, double s);
double radial_kernel_2(const Dimension& dim, double s);

// Ratios sinh(rho(t))^(1-n) / t^(-1+1/n) at t_small and
// sinh(rho(t))^(1-n) / t^(-1) at t_large.  The limits are
// omega_n^((n-1)/n) and n omega_n / (n-1) respectively.
std::pair<double, double> kernel_asymptotics_check(const Dimension& dim,
                                                   double t_small,
                                                   double t_large);

} // namespace hypsob
