#include "core/powerlog.hpp"

#include "core/errors.hpp"

namespace hypsob {

namespace {
constexpr double kEq = 1e-12;
} // namespace

bool integrable_at_zero(const ExpTriple& e) {
  if (e.power > -1.0 + kEq) return true;
  if (e.power < -1.0 - kEq) return false;
  if (e.logp < -1.0 - kEq) return true;
  if (e.logp > -1.0 + kEq) return false;
  return e.loglogp < -1.0 - kEq;
}

bool integrable_at_inf(const ExpTriple& e) {
  if (e.power < -1.0 - kEq) return true;
  if (e.power > -1.0 + kEq) return false;
  if (e.logp < -1.0 - kEq) return true;
  if (e.logp > -1.0 + kEq) return false;
  return e.loglogp < -1.0 - kEq;
}

bool bounded_at_zero(const ExpTriple& e) {
  if (e.power > kEq) return true;
  if (e.power < -kEq) return false;
  if (e.logp < -kEq) return true;
  if (e.logp > kEq) return false;
  return e.loglogp <= kEq;
}

bool bounded_at_inf(const ExpTriple& e) {
  if (e.power < -kEq) return true;
  if (e.power > kEq) return false;
  if (e.logp < -kEq) return true;
  if (e.logp > kEq) return false;
  return e.loglogp <= kEq;
}

bool vanishes_at_inf(const ExpTriple& e) {
  if (e.power < -kEq) return true;
  if (e.power > kEq) return false;
  if (e.logp < -kEq) return true;
  if (e.logp > kEq) return false;
  return e.loglogp < -kEq;
}

bool vanishes_at_zero(const ExpTriple& e) {
  if (e.power > kEq) return true;
  if (e.power < -kEq) return false;
  if (e.logp < -kEq) return true;
  if (e.logp > kEq) return false;
  return e.loglogp < -kEq;
}

double PowerLogFunction::operator()(double t) const {
  if (!(t > 0.0)) throw_domain("PowerLogFunction eval: t must be positive");
  if (window == Window::UnitInterval && t >= 1.0) return 0.0;
  if (window == Window::BeyondOne && t <= 1.0) return 0.0;
  const bool small = t < 1.0;
  const double d = small ? delta0 : delta_inf;
  const double e = small ? eps0 : eps_inf;
  return std::pow(t, -gamma) * std::pow(ell(t), d) * std::pow(ellell(t), e);
}

} // namespace hypsob
