#pragma once

#include <cmath>

namespace hypsob {

// ell(t) = 1 + |log t| and its iterate; the logarithmic building blocks of
// the Lorentz-Zygmund scale.
inline double ell(double t) { return 1.0 + std::abs(std::log(t)); }
inline double ellell(double t) { return 1.0 + std::log(ell(t)); }

// Exponent triple (power, log, loglog) describing t^power ell^logp lell^llogp
// behavior near one end of the half line.  Finiteness of integrals and
// suprema is decided lexicographically.
struct ExpTriple {
  double power = 0.0;
  double logp = 0.0;
  double loglogp = 0.0;

  ExpTriple operator+(const ExpTriple& o) const {
    return {power + o.power, logp + o.logp, loglogp + o.loglogp};
  }
  ExpTriple scaled(double q) const { return {power * q, logp * q, loglogp * q}; }
};

// int_0^1 t^power ell^logp lell^llogp dt < inf ?
bool integrable_at_zero(const ExpTriple& e);
// int_1^inf ... dt < inf ?
bool integrable_at_inf(const ExpTriple& e);
// bounded as t -> 0+ / t -> inf ?
bool bounded_at_zero(const ExpTriple& e);
bool bounded_at_inf(const ExpTriple& e);
// tends to zero (strictly decaying) at the given end?
bool vanishes_at_inf(const ExpTriple& e);
bool vanishes_at_zero(const ExpTriple& e);

// g(t) = t^(-gamma) ell^(delta0|deltainf)(t) lell^(eps0|epsinf)(t), possibly
// restricted to (0,1) or (1,inf).  Closed under exponent arithmetic; used
// for membership decisions and as extremal test functions.
struct PowerLogFunction {
  double gamma = 0.0;
  double delta0 = 0.0, delta_inf = 0.0;
  double eps0 = 0.0, eps_inf = 0.0;
  enum class Window { Full, UnitInterval, BeyondOne } window = Window::Full;

  double operator()(double t) const;
  ExpTriple at_zero() const { return {-gamma, delta0, eps0}; }
  ExpTriple at_inf() const { return {-gamma, delta_inf, eps_inf}; }
  bool supported_near_zero() const { return window != Window::BeyondOne; }
  bool supported_near_inf() const { return window != Window::UnitInterval; }
};

} // namespace hypsob
