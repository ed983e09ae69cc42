#include "core/spaces.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/hardy.hpp"

namespace hypsob {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool finite_exp(double p) { return std::isfinite(p); }
} // namespace

double LambdaWeight::operator()(double t) const {
  if (!(t > 0.0)) throw_domain("LambdaWeight eval: t must be positive");
  const ExpTriple& e = t < 1.0 ? near_zero : near_inf;
  return std::pow(t, e.power) * std::pow(ell(t), e.logp) *
         std::pow(ellell(t), e.loglogp);
}

SpaceSpec SpaceSpec::lebesgue(double p) {
  SpaceSpec s;
  s.kind = Kind::Lebesgue;
  s.p = p;
  s.q = p;
  return s;
}

SpaceSpec SpaceSpec::lorentz(double p, double q) {
  SpaceSpec s;
  s.kind = Kind::Lorentz;
  s.p = p;
  s.q = q;
  // the raw functional is not subadditive for q > p: use the f** version
  if (q > p && p > 1.0) s.star_star = true;
  return s;
}

SpaceSpec SpaceSpec::lorentz_zygmund(double p, double q, double a0, double ai,
                                     double b0, double bi) {
  SpaceSpec s;
  s.kind = Kind::LorentzZygmund;
  s.p = p;
  s.q = q;
  s.a0 = a0;
  s.ai = ai;
  s.b0 = b0;
  s.bi = bi;
  if (q > p && p > 1.0) s.star_star = true;
  return s;
}

SpaceSpec SpaceSpec::classical_lorentz(double q, LambdaWeight v) {
  SpaceSpec s;
  s.kind = Kind::ClassicalLorentz;
  s.q = q;
  s.weight = v;
  return s;
}

SpaceSpec SpaceSpec::intersection(std::vector<SpaceSpec> parts) {
  SpaceSpec s;
  s.kind = Kind::Intersection;
  s.parts = std::move(parts);
  if (s.parts.empty()) throw_spec("intersection: needs at least one part");
  return s;
}

SpaceSpec SpaceSpec::sum(SpaceSpec x, SpaceSpec y) {
  SpaceSpec s;
  s.kind = Kind::Sum;
  s.parts = {std::move(x), std::move(y)};
  return s;
}

SpaceSpec SpaceSpec::operator_induced(OpKind kind, int m, int n, SpaceSpec base) {
  SpaceSpec s;
  s.kind = Kind::OperatorInduced;
  s.op_kind = kind;
  s.m = m;
  s.n = n;
  s.parts = {std::move(base)};
  return s;
}

SpaceSpec SpaceSpec::z1(int m, int n) {
  SpaceSpec s;
  s.kind = Kind::ZSpace;
  s.z_index = 1;
  s.m = m;
  s.n = n;
  return s;
}

SpaceSpec SpaceSpec::z2(int m, int n) {
  SpaceSpec s;
  s.kind = Kind::ZSpace;
  s.z_index = 2;
  s.m = m;
  s.n = n;
  return s;
}

SpaceSpec SpaceSpec::z3(int m, int n, double alpha_inf) {
  SpaceSpec s;
  s.kind = Kind::ZSpace;
  s.z_index = 3;
  s.m = m;
  s.n = n;
  s.z_alpha_inf = alpha_inf;
  return s;
}

SpaceSpec SpaceSpec::with_star_star() const {
  SpaceSpec s = *this;
  s.star_star = true;
  return s;
}

std::string SpaceSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Lebesgue:
      os << "L^" << p;
      break;
    case Kind::Lorentz:
      os << "L^(" << p << "," << q << ")";
      break;
    case Kind::LorentzZygmund:
      os << "L^(" << p << "," << q << ";[" << a0 << "," << ai << "]";
      if (b0 != 0.0 || bi != 0.0) os << ",[" << b0 << "," << bi << "]";
      os << ")";
      break;
    case Kind::ClassicalLorentz:
      os << "Lambda^" << q << "_v";
      break;
    case Kind::Intersection: {
      for (std::size_t i = 0; i < parts.size(); ++i)
        os << (i ? " ^ " : "") << parts[i].describe();
      break;
    }
    case Kind::Sum:
      os << parts[0].describe() << " + " << parts[1].describe();
      break;
    case Kind::OperatorInduced: {
      const char* names[] = {"nu", "sigma", "lambda", "mu"};
      os << names[static_cast<int>(op_kind)] << "_(" << m << ","
         << parts[0].describe() << ")";
      break;
    }
    case Kind::ZSpace:
      os << "Z" << z_index;
      break;
  }
  if (star_star) os << "[**]";
  return os.str();
}

bool lz_is_norm(double p, double q, double a0, double ai) {
  if (p == 1.0 && q == 1.0) return a0 >= 0.0 && ai <= 0.0;
  if (p > 1.0 && finite_exp(p)) return q >= 1.0;
  if (p == kInf && finite_exp(q)) return q >= 1.0 && a0 + 1.0 / q < 0.0;
  if (p == kInf && q == kInf) return a0 <= 0.0;
  return false;
}

bool is_legal(const SpaceSpec& s) {
  switch (s.kind) {
    case SpaceSpec::Kind::Lebesgue:
      return s.p >= 1.0;
    case SpaceSpec::Kind::Lorentz:
      return (s.p > 1.0 && finite_exp(s.p) && s.q >= 1.0) ||
             (s.p == 1.0 && s.q == 1.0) || (s.p == kInf && s.q == kInf);
    case SpaceSpec::Kind::LorentzZygmund:
      // the ** version L^((1,inf;A)) is subadditive and appears in the
      // intersection decompositions of the Z norms
      if (s.star_star && s.p == 1.0 && s.q == kInf && s.a0 >= 0.0 && s.ai <= 0.0)
        return true;
      return s.q >= 1.0 && lz_is_norm(s.p, s.q, s.a0, s.ai);
    case SpaceSpec::Kind::ClassicalLorentz:
      return s.q >= 1.0;
    case SpaceSpec::Kind::Intersection:
    case SpaceSpec::Kind::Sum: {
      for (const SpaceSpec& part : s.parts)
        if (!is_legal(part)) return false;
      return true;
    }
    case SpaceSpec::Kind::OperatorInduced:
      return s.m >= 1 && s.m < s.n && is_legal(s.parts[0]);
    case SpaceSpec::Kind::ZSpace:
      if (s.z_index == 1) return s.m >= 3 && s.m % 2 == 1 && s.m < s.n;
      if (s.z_index == 2) return s.m % 2 == 0 && s.m >= 2 && s.m < s.n;
      return s.m >= 1 && s.m < s.n &&
             s.z_alpha_inf > std::ceil(s.m / 2.0);
  }
  return false;
}

void check_legal(const SpaceSpec& s) {
  if (!is_legal(s)) throw_spec("illegal space: " + s.describe());
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (p == kInf) return 1.0;
  if (!(p > 1.0)) throw_spec("conjugate_exponent: p must be in [1, inf]");
  return p / (p - 1.0);
}

SpaceSpec associate_space(const SpaceSpec& s) {
  check_legal(s);
  switch (s.kind) {
    case SpaceSpec::Kind::Lebesgue:
      return SpaceSpec::lebesgue(conjugate_exponent(s.p));
    case SpaceSpec::Kind::Lorentz:
      return SpaceSpec::lorentz(conjugate_exponent(s.p), conjugate_exponent(s.q));
    case SpaceSpec::Kind::LorentzZygmund:
      if (s.b0 != 0.0 || s.bi != 0.0)
        throw_spec("associate_space: loglog exponents not supported");
      return SpaceSpec::lorentz_zygmund(conjugate_exponent(s.p),
                                        conjugate_exponent(s.q), -s.a0, -s.ai);
    case SpaceSpec::Kind::Intersection: {
      if (s.parts.size() != 2)
        throw_spec("associate_space: intersection associate needs two parts");
      return SpaceSpec::sum(associate_space(s.parts[0]), associate_space(s.parts[1]));
    }
    case SpaceSpec::Kind::Sum:
      return SpaceSpec::intersection(
          {associate_space(s.parts[0]), associate_space(s.parts[1])});
    default:
      throw_spec("associate_space: no closed associate for " + s.describe());
  }
}

LambdaWeight weight_v1(double p, double q, double a0, double ai, int m, int n) {
  // t^((n-mp)/(np) - 1/q) ell^a0 on (0,1);  t^(1/p - 1/q) ell^ai beyond.
  const double iq = (q == kInf) ? 0.0 : 1.0 / q;
  LambdaWeight w;
  w.near_zero = {(n - m * p) / (n * p) - iq, a0, 0.0};
  w.near_inf = {1.0 / p - iq, ai, 0.0};
  return w;
}

LambdaWeight weight_v2(double q, double a0, double ai, int m, int n) {
  const double iq = (q == kInf) ? 0.0 : 1.0 / q;
  LambdaWeight w;
  w.near_zero = {-iq, a0 - 1.0, 0.0};
  w.near_inf = {static_cast<double>(m) / n - iq, ai, 0.0};
  return w;
}

LambdaWeight weight_v3(double q, double ai, int m, int n) {
  const double iq = (q == kInf) ? 0.0 : 1.0 / q;
  LambdaWeight w;
  w.near_zero = {-iq, -iq, -1.0};
  w.near_inf = {static_cast<double>(m) / n - iq, ai, 0.0};
  return w;
}

bool maximal_operator_bounded(const SpaceSpec& s) {
  switch (s.kind) {
    case SpaceSpec::Kind::Lebesgue:
    case SpaceSpec::Kind::Lorentz:
    case SpaceSpec::Kind::LorentzZygmund:
      return s.p > 1.0;
    default:
      throw_applicability("maximal_operator_bounded: decided analytically only for Lorentz-Zygmund specs");
  }
}

bool maximal_operator_bounded_on_associate(const SpaceSpec& s) {
  switch (s.kind) {
    case SpaceSpec::Kind::Lebesgue:
    case SpaceSpec::Kind::Lorentz:
    case SpaceSpec::Kind::LorentzZygmund:
      return finite_exp(s.p);
    default:
      throw_applicability("maximal_operator_bounded_on_associate: decided analytically only for Lorentz-Zygmund specs");
  }
}

} // namespace hypsob
