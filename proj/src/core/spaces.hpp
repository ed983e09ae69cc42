#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/powerlog.hpp"

namespace hypsob {

// Two-piece power-log weight v(t) = t^p0 ell^l0 lell^ll0 on (0,1),
// t^p1 ell^l1 on [1,inf); the carrier of classical Lorentz norms.
struct LambdaWeight {
  ExpTriple near_zero;
  ExpTriple near_inf;
  double operator()(double t) const;
};

// Variant describing a rearrangement-invariant norm.  Lebesgue and Lorentz
// are Lorentz-Zygmund specs with zero log exponents; they are kept as their
// own kinds to preserve exact closed-form evaluation paths.
struct SpaceSpec {
  enum class Kind {
    Lebesgue,
    Lorentz,
    LorentzZygmund,
    ClassicalLorentz,
    Intersection,
    Sum,
    OperatorInduced,
    ZSpace,
  };
  enum class OpKind { Nu, Sigma, Lambda, Mu };

  Kind kind = Kind::Lebesgue;
  double p = 1.0, q = 1.0;           // may be +inf
  double a0 = 0.0, ai = 0.0;         // log exponents A = [a0, ai]
  double b0 = 0.0, bi = 0.0;         // loglog exponents B
  bool star_star = false;            // norm of f** instead of f*
  LambdaWeight weight;               // ClassicalLorentz
  std::vector<SpaceSpec> parts;      // Intersection members / Sum pair /
                                     // OperatorInduced base (parts[0])
  OpKind op_kind = OpKind::Nu;       // OperatorInduced
  int m = 1, n = 3;                  // OperatorInduced / ZSpace orders
  int z_index = 1;                   // ZSpace: 1, 2 or 3
  double z_alpha_inf = 0.0;          // ZSpace 3 parameter

  static SpaceSpec lebesgue(double p);
  static SpaceSpec lorentz(double p, double q);
  static SpaceSpec lorentz_zygmund(double p, double q, double a0, double ai,
                                   double b0 = 0.0, double bi = 0.0);
  static SpaceSpec classical_lorentz(double q, LambdaWeight v);
  static SpaceSpec intersection(std::vector<SpaceSpec> parts);
  static SpaceSpec sum(SpaceSpec x, SpaceSpec y);
  static SpaceSpec operator_induced(OpKind kind, int m, int n, SpaceSpec base);
  static SpaceSpec z1(int m, int n);
  static SpaceSpec z2(int m, int n);
  static SpaceSpec z3(int m, int n, double alpha_inf);

  // The f**-based true norm of a (p,q) quasinorm space.
  SpaceSpec with_star_star() const;

  std::string describe() const;
};

// The four Lorentz-Zygmund legality conditions for L^{p,q;A}.
bool lz_is_norm(double p, double q, double a0, double ai);

// Throws Error(Spec) when the spec is not (equivalent to) an r.i. norm.
void check_legal(const SpaceSpec& space);
bool is_legal(const SpaceSpec& space);

// Associate space: (L^{p,q;A})' = L^{p',q';-A}; Lebesgue/Lorentz conjugate
// exponents; Sum <-> Intersection.  Throws Error(Spec) where no closed
// associate is implemented.
SpaceSpec associate_space(const SpaceSpec& space);

// Conjugate exponent with exact handling of the endpoints 1 and inf.
double conjugate_exponent(double p);

// Weights of the optimal-target example table (v1, v2, v3).
LambdaWeight weight_v1(double p, double q, double a0, double ai, int m, int n);
LambdaWeight weight_v2(double q, double a0, double ai, int m, int n);
LambdaWeight weight_v3(double q, double ai, int m, int n);

// Boundedness of f -> f** on a Lorentz-Zygmund space: p > 1; on its
// associate: p < inf.  (Boyd-index facts; cross-checked numerically in the
// verification suites.)
bool maximal_operator_bounded(const SpaceSpec& lz_like);
bool maximal_operator_bounded_on_associate(const SpaceSpec& lz_like);

} // namespace hypsob
