#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/fn.hpp"
#include "core/spaces.hpp"

namespace hypsob {

// Quantified divergence: the truncated value and the exponent triple of the
// divergent end.  Non-existence results are reported through these rather
// than exceptions.
struct DivergenceCertificate {
  bool at_infinity = true;
  double truncation = 0.0;
  double truncated_value = 0.0;
  ExpTriple growth{0.0, 0.0, 0.0};
};

struct NormValue {
  double value = 0.0; // +inf when the defining integral diverges
  enum class Cert { Exact, Quadrature, LowerBound, UpperBound } cert =
      Cert::Quadrature;
  std::optional<DivergenceCertificate> divergence;
  bool finite() const { return std::isfinite(value); }
};

// Norm of f in the given space.  Divergent norms return +inf with a
// certificate; illegal spaces throw Error(Spec).
NormValue norm(const SpaceSpec& X, const Fn& f);

// Norm restricted to (0, T): the divergence certificates' workhorse.
double truncated_norm(const SpaceSpec& X, const Fn& f, double T);

// Raw (p,q) Lorentz quasinorm without the f** correction; read-only
// diagnostic next to the subadditive norm used everywhere else.
NormValue lorentz_quasinorm_raw(double p, double q, const Fn& f);

// (int f g, ||f||_X ||g||_X'): the Holder pair.
std::pair<double, double> holder_gap(const Fn& f, const Fn& g,
                                     const SpaceSpec& X);

// max over the family of int f* g*/||g||_X; a certified lower bound for
// ||f||_X'.
NormValue associate_norm_lower_bound(const SpaceSpec& X, const Fn& f,
                                     const std::vector<Fn>& family);

// Finiteness of ||g||_X for a pure power-log g, decided by exponent
// arithmetic (power, then log, then loglog).  Requires a Lorentz-Zygmund
// style space.
bool powerlog_membership(const PowerLogFunction& g, const SpaceSpec& space);

// int_0^inf f g for arbitrary carriers (exact for step pairs).
double pairing_integral(const Fn& f, const Fn& g);

} // namespace hypsob
