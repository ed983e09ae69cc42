#pragma once

#include <functional>

#include "core/powerlog.hpp"

namespace hypsob {

// Adaptive Gauss-Legendre quadrature (G7/K15 error estimate, recursive
// bisection).  All routines are pure and thread safe.

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-300; // pure relative control by default
  int max_depth = 48;
};

// Integral of f over the finite interval [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt = {});

// Integral over [a, b] with 0 <= a < b, using the substitution t = e^u when
// the interval spans several octaves.  Suitable for integrands with an
// integrable power singularity at 0; `pow_hint` is the leading exponent of f
// near 0 (must be > -1 when a == 0).
double integrate_pos(const std::function<double(double)>& f, double a, double b,
                     double pow_hint = 0.0, const QuadOptions& opt = {});

// Integral over [a, infinity), a > 0.  `pow_hint` is the leading power of f
// at infinity and must be < -1; the tail is mapped through t = a e^u and
// truncated where the integrand envelope falls below tolerance.
double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double pow_hint, const QuadOptions& opt = {});

// Fixed (non adaptive) 15 point Gauss-Legendre panel; smooth in the
// endpoints, which makes it suitable for finite-difference work.
double gauss15(const std::function<double(double)>& f, double a, double b);

// Tail integral int_T^inf f with the full power-log exponent triple of f at
// infinity.  Handles power == -1 (integrable through log exponents) by the
// substitution u = log t, recursing one level down the (power, log, loglog)
// ladder.  Throws Divergence when the triple is not integrable.
double integrate_tail_triple(const std::function<double(double)>& f, double T,
                             const ExpTriple& e, const QuadOptions& opt = {});

// int_0^T f with the exponent triple of f at 0; mirror of the above through
// t -> 1/t.
double integrate_zero_triple(const std::function<double(double)>& f, double T,
                             const ExpTriple& e, const QuadOptions& opt = {});

} // namespace hypsob
