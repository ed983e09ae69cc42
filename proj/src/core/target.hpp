#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "core/fn.hpp"
#include "core/norms.hpp"
#include "core/spaces.hpp"

namespace hypsob::target {

// The membership condition governing existence of any rearrangement-
// invariant target: (1 + log t)^(ceil(m/2 - 1)) / t restricted to (1, inf)
// must lie in X'.
struct ExistenceWitness {
  bool holds = false;
  PowerLogFunction tested;           // the membership function
  bool via_exponent_arithmetic = false;
  std::optional<DivergenceCertificate> divergence; // when decided by quadrature
};
ExistenceWitness existence_condition(int m, const SpaceSpec& X);

// t^(-1 + m/n) chi_(1, inf) in X'  (euclidean-comparison regime)
bool subcritical_condition(int m, int n, const SpaceSpec& X);
// t^(-1 + m/n) chi_(0, 1) + ell^k / t chi_(1, inf) in X'  (target in L^inf)
bool supercritical_condition(int m, int n, const SpaceSpec& X);

// Values of the target associate functionals at g: nu/sigma/lambda/mu with
// the X' norm.  Theorem hypotheses are checked, not assumed; failures throw
// Error(Applicability) naming the check.  A failing norm-property condition
// yields +inf with a certificate instead.
NormValue target_norm_nu(int m, int n, const SpaceSpec& X, const Fn& g);
NormValue target_norm_sigma(int m, int n, const SpaceSpec& X, const Fn& g);
NormValue target_norm_lambda(int m, int n, const SpaceSpec& X, const Fn& g);
NormValue target_norm_mu(int m, int n, const SpaceSpec& X, const Fn& g);

// Truncated nu functional of chi_(0,1) at increasing cutoffs: quantifies the
// divergence in the non-existence regime.
struct NonexistenceCertificate {
  std::array<double, 3> truncations{1e2, 1e4, 1e6};
  std::array<double, 3> values{};
  // expected ell-growth exponent of the truncated functional
  double rate_exponent = 0.0;
  // increments of the functional against increments of ell^rate/rate
  std::array<double, 2> increment_rate_ratios{};
  bool monotone = false;
};
NonexistenceCertificate nonexistence_certificate(int m, int n,
                                                 const SpaceSpec& X);

// One row of the Lorentz-Zygmund optimal-target table.
struct TargetDescription {
  int m = 1;
  int n = 3;
  SpaceSpec source;
  enum class Row {
    V1,
    Z1,
    Z2,
    V2,
    V3,
    LInfIntersect,
    Z3,
    NoRow,       // legal X, but no table row covers the parameters
    NonExistent, // no rearrangement-invariant target exists
  } row = Row::NoRow;
  std::optional<SpaceSpec> result;
  // applicability flags
  bool existence = false;
  bool maximal_bounded_on_x = false;
  bool maximal_bounded_on_xa = false;
  bool subcritical = false;
  bool supercritical = false;
  std::optional<NonexistenceCertificate> nonexistence;
  std::string note;
};
TargetDescription lz_optimal_target(int m, int n, double p, double q,
                                    double a0, double ai);

// Two-sided ratio of a pair of operator-induced functionals over a family.
enum class EquivPair { NuSigma, SigmaLambda, NuMu };
struct RatioReport {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::size_t family_size = 0;
  std::size_t compared = 0;
};
RatioReport equivalence_certify(EquivPair pair, int m, int n,
                                const SpaceSpec& X,
                                const std::vector<Fn>& family);

// Intersection decompositions of the table rows, certified as two-sided
// ratio bounds over a family.
enum class DecompositionCase { V1, V2, Z1, Z2, Z3 };
struct DecompositionReport {
  double min_ratio = 0.0; // lambda-norm / intersection-norm extremes
  double max_ratio = 0.0;
  std::size_t compared = 0;
};
DecompositionReport intersection_decomposition_check(
    DecompositionCase which, int m, int n, double p, double q, double a0,
    double ai, const std::vector<Fn>& family);

} // namespace hypsob::target
