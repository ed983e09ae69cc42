#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "core/fn.hpp"
#include "core/hyperbolic.hpp"
#include "core/norms.hpp"
#include "core/spaces.hpp"
#include "core/target.hpp"

namespace hypsob::verify {

// Radial test profile in the volume variable t = V(dist), built by the
// exact sinh-kernel operator stages.
struct RadialProfile {
  std::function<double(double)> value;
  int n = 3;
  int m = 1;
  double support_end = 0.0; // 0 when the profile has unbounded support
};

// u_f profile: the m-th order sinh-kernel stage chain applied to f, which
// must be bounded with compact support inside (0, inf).
RadialProfile build_profile(int m, const StepFunction& f, const Dimension& dim);

// Pointwise ratio bracket of the sinh-kernel chain against the model chain
// T_m over a logarithmic grid.
struct KernelBracket {
  double lower = 0.0, upper = 0.0;
};
KernelBracket tilde_model_bracket(int m, const StepFunction& f,
                                  const Dimension& dim,
                                  const std::vector<double>& grid);

// Finite-difference Laplace-Beltrami check in the Poincare radial
// coordinate against -(n w_n)^2 f(V(dist)).
struct LaplacianCheck {
  std::vector<double> r;
  std::vector<double> finite_difference;
  std::vector<double> expected;
  double max_rel_error = 0.0; // over nodes with |expected| above threshold
};
LaplacianCheck radial_laplacian(const Dimension& dim,
                                const std::function<double(double)>& f,
                                double support_lo, double support_hi,
                                const std::vector<double>& r_grid,
                                double rel_step = 1e-4);

// (pullback norm, direct norm) scaled by c_{n,m} = (n w_n)^ceil(m/2): the
// measure-preservation route against the one-dimensional route.
std::pair<double, double> gradient_norm_identity(int m, const SpaceSpec& X,
                                                 const StepFunction& f,
                                                 const Dimension& dim);

// Reduction-principle ratio suite and the limiting inequalities.
struct SobolevCase {
  std::string name;
  int m = 1, n = 3;
  std::string x_desc, y_desc;
  std::size_t family_size = 0;
  double empirical_constant = 0.0;
  double refinement_delta = 0.0; // relative change on family doubling
  std::vector<std::string> witnesses;
  bool pass = false;
  bool rejected = false;
  std::optional<target::NonexistenceCertificate> rejection;
};

enum class ReductionOperator { T, S };
SobolevCase reduction_ratio_suite(int m, int n, const SpaceSpec& X,
                                  const SpaceSpec& Y, unsigned seed,
                                  std::size_t family_size,
                                  ReductionOperator which);

enum class LimitingCase { OddL1, EvenL1, Critical, SupercriticalLZ };
SobolevCase limiting_inequalities_check(LimitingCase which, int n, int m,
                                        unsigned seed, std::size_t family_size,
                                        double alpha0 = 0.0,
                                        double alpha_inf = 0.0);

// Polya-Szego equality case for radial nonincreasing profiles.
struct PSProfile {
  std::function<double(double)> value;      // nonincreasing in t
  std::function<double(double)> derivative; // a.e.
  double support_end = 0.0;                 // 0 if unbounded
  bool nonincreasing = true;
};
std::pair<double, double> polya_szego_radial_check(const PSProfile& profile,
                                                   double p,
                                                   const Dimension& dim);

// Potential-estimate consistency: the one-stage profile equals the kernel
// integral of f** to quadrature accuracy; returns the max relative gap over
// the grid.
double potential_estimate_gap(const StepFunction& f, const Dimension& dim,
                              const std::vector<double>& grid);

// Empirical dilation-norm of D_a on X over a family (lower estimate); the
// numeric cross-check of the Boyd-index shortcut.
double dilation_norm_estimate(const SpaceSpec& X, double a,
                              const std::vector<Fn>& family);

} // namespace hypsob::verify
