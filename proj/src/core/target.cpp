#include "core/target.hpp"

#include <cmath>

#include "core/errors.hpp"
#include "core/hardy.hpp"
#include "core/ops.hpp"
#include "core/quadrature.hpp"

namespace hypsob::target {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool lz_like(const SpaceSpec& X) {
  return X.kind == SpaceSpec::Kind::Lebesgue ||
         X.kind == SpaceSpec::Kind::Lorentz ||
         X.kind == SpaceSpec::Kind::LorentzZygmund;
}

PowerLogFunction existence_function(int m) {
  PowerLogFunction g;
  g.gamma = 1.0;
  g.delta_inf = hardy::derive_k(m);
  g.window = PowerLogFunction::Window::BeyondOne;
  return g;
}

// Membership of g in X' decided by exponent arithmetic for LZ specs, by a
// quadrature divergence probe otherwise.
bool member_of_associate(const PowerLogFunction& g, const SpaceSpec& X,
                         bool* via_exponents,
                         std::optional<DivergenceCertificate>* cert) {
  if (lz_like(X)) {
    if (via_exponents) *via_exponents = true;
    return powerlog_membership(g, associate_space(X));
  }
  if (via_exponents) *via_exponents = false;
  const SpaceSpec Xa = associate_space(X);
  const NormValue v = norm(Xa, Fn{g});
  if (!v.finite() && cert) *cert = v.divergence;
  return v.finite();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw_applicability("hypothesis failed: " + what);
}

NormValue functional_value(SpaceSpec::OpKind kind, int m, int n,
                           const SpaceSpec& norm_space, const Fn& g) {
  return norm(SpaceSpec::operator_induced(kind, m, n, norm_space), g);
}

} // namespace

ExistenceWitness existence_condition(int m, const SpaceSpec& X) {
  if (m < 1) throw_domain("existence_condition: m >= 1 required");
  ExistenceWitness w;
  w.tested = existence_function(m);
  w.holds = member_of_associate(w.tested, X, &w.via_exponent_arithmetic,
                                &w.divergence);
  return w;
}

bool subcritical_condition(int m, int n, const SpaceSpec& X) {
  if (!(m >= 1 && m < n)) throw_domain("subcritical_condition: need 1 <= m < n");
  PowerLogFunction g;
  g.gamma = 1.0 - static_cast<double>(m) / n;
  g.window = PowerLogFunction::Window::BeyondOne;
  return member_of_associate(g, X, nullptr, nullptr);
}

bool supercritical_condition(int m, int n, const SpaceSpec& X) {
  if (!(m >= 1 && m < n)) throw_domain("supercritical_condition: need 1 <= m < n");
  PowerLogFunction near0;
  near0.gamma = 1.0 - static_cast<double>(m) / n;
  near0.window = PowerLogFunction::Window::UnitInterval;
  if (!member_of_associate(near0, X, nullptr, nullptr)) return false;
  return existence_condition(m, X).holds;
}

NormValue target_norm_nu(int m, int n, const SpaceSpec& X, const Fn& g) {
  if (!(m >= 1 && m < n)) throw_domain("target_norm_nu: need 1 <= m < n");
  return functional_value(SpaceSpec::OpKind::Nu, m, n, associate_space(X), g);
}

NormValue target_norm_sigma(int m, int n, const SpaceSpec& X, const Fn& g) {
  if (!(m >= 1 && m < n)) throw_domain("target_norm_sigma: need 1 <= m < n");
  if (m >= 2)
    require(maximal_operator_bounded(X),
            "f -> f** bounded on X (needed by the sigma description)");
  return functional_value(SpaceSpec::OpKind::Sigma, m, n, associate_space(X), g);
}

NormValue target_norm_lambda(int m, int n, const SpaceSpec& X, const Fn& g) {
  if (!(m >= 1 && m < n)) throw_domain("target_norm_lambda: need 1 <= m < n");
  if (m >= 2)
    require(maximal_operator_bounded(X),
            "f -> f** bounded on X (needed by the lambda description)");
  if (m >= 3)
    require(maximal_operator_bounded_on_associate(X),
            "f -> f** bounded on X' (needed by the lambda description)");
  return functional_value(SpaceSpec::OpKind::Lambda, m, n, associate_space(X), g);
}

NormValue target_norm_mu(int m, int n, const SpaceSpec& X, const Fn& g) {
  if (!(m >= 1 && m < n)) throw_domain("target_norm_mu: need 1 <= m < n");
  if (m != 2)
    require(maximal_operator_bounded_on_associate(X),
            "f -> f** bounded on X' (needed by the mu description)");
  return functional_value(SpaceSpec::OpKind::Mu, m, n, associate_space(X), g);
}

NonexistenceCertificate nonexistence_certificate(int m, int n,
                                                 const SpaceSpec& X) {
  if (!(m >= 1 && m < n)) throw_domain("nonexistence_certificate: need 1 <= m < n");
  if (!lz_like(X))
    throw_spec("nonexistence_certificate: Lorentz-Zygmund source required");
  const int k = hardy::derive_k(m);
  // The associate functional as a classical Lorentz spec: this sidesteps the
  // legality question for the conjugate parameters (the certificate only
  // needs the weighted truncated integrals).
  const double qc = conjugate_exponent(X.q);
  const double pc = conjugate_exponent(X.p);
  const double iqc = (qc == kInf) ? 0.0 : 1.0 / qc;
  const double ipc = (pc == kInf) ? 0.0 : 1.0 / pc;
  LambdaWeight w;
  w.near_zero = {ipc - iqc, -X.a0, -X.b0};
  w.near_inf = {ipc - iqc, -X.ai, -X.bi};
  // truncated nu functional of chi_(0,1)
  const Fn chi{StepFunction::indicator(0.0, 1.0)};
  std::vector<OperatorSpec> chain;
  if (m % 2 == 1) chain.push_back(OperatorSpec::op_R(1.0, n));
  const int stages = (m % 2 == 1) ? k : k + 1;
  for (int i = 0; i < stages; ++i) {
    chain.push_back(OperatorSpec::op_H(2.0, n));
    chain.push_back(OperatorSpec::op_P(n));
  }
  const Fn out_fn = apply_operator(OperatorSpec::compose(chain), chi);
  const PwExpr& out = out_fn.expr();
  NonexistenceCertificate cert;
  // rate: the integrand behaves like ell^(k - ai)/t at infinity, so the
  // truncated functional grows like ell^rate with rate = k + 1 - ai.
  cert.rate_exponent = k + 1.0 - X.ai;
  // Truncated functional as the direct weighted integral of the operator
  // output: exact in the growth region (the output is nonincreasing beyond
  // its hump, so the rearrangement only moves a bounded head around).
  if (qc != 1.0)
    throw_spec("nonexistence_certificate: only q' = 1 sources are quantified");
  QuadOptions opt;
  opt.rel_tol = 1e-10;
  auto integrand = [&](double t) { return w(t) * out(t); };
  const double hint0 = out.leading_at_zero().power + w.near_zero.power;
  std::vector<double> cuts = out.knots();
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t i = 0; i < cert.truncations.size(); ++i) {
    const double T = cert.truncations[i];
    double acc = 0.0;
    double lo = 0.0;
    for (double c : cuts) {
      if (c >= T) break;
      acc += integrate_pos(integrand, lo, c, hint0, opt);
      lo = c;
    }
    acc += integrate_pos(integrand, lo, T, hint0, opt);
    cert.values[i] = acc;
  }
  cert.monotone =
      cert.values[0] < cert.values[1] && cert.values[1] < cert.values[2];
  auto rate = [&](double T) {
    return std::pow(ell(T), cert.rate_exponent) / cert.rate_exponent;
  };
  for (int i = 0; i < 2; ++i) {
    const double dv = cert.values[i + 1] - cert.values[i];
    const double dr = rate(cert.truncations[i + 1]) - rate(cert.truncations[i]);
    cert.increment_rate_ratios[i] = dv / dr;
  }
  return cert;
}

TargetDescription lz_optimal_target(int m, int n, double p, double q,
                                    double a0, double ai) {
  if (!(m >= 1 && m < n)) throw_domain("lz_optimal_target: need 1 <= m < n");
  if (!lz_is_norm(p, q, a0, ai))
    throw_spec("lz_optimal_target: X is not (equivalent to) an r.i. norm");
  const SpaceSpec X = SpaceSpec::lorentz_zygmund(p, q, a0, ai);
  TargetDescription d;
  d.m = m;
  d.n = n;
  d.source = X;
  d.existence = existence_condition(m, X).holds;
  d.maximal_bounded_on_x = maximal_operator_bounded(X);
  d.maximal_bounded_on_xa = maximal_operator_bounded_on_associate(X);
  d.subcritical = subcritical_condition(m, n, X);
  d.supercritical = supercritical_condition(m, n, X);
  const double critical = static_cast<double>(n) / m;
  const double qc = conjugate_exponent(q);
  const double iqc = (qc == kInf) ? 0.0 : 1.0 / qc;
  using Row = TargetDescription::Row;

  if ((m == 1 && p == 1.0 && q == 1.0 && a0 >= 0.0 && ai <= 0.0) ||
      (p > 1.0 && p < critical)) {
    d.row = Row::V1;
    d.result = SpaceSpec::classical_lorentz(q, weight_v1(p, q, a0, ai, m, n));
    return d;
  }
  if (m >= 3 && m % 2 == 1 && p == 1.0 && q == 1.0 && a0 == 0.0 && ai == 0.0) {
    d.row = Row::Z1;
    d.result = SpaceSpec::z1(m, n);
    return d;
  }
  if (m % 2 == 0 && p == 1.0 && q == 1.0 && a0 == 0.0 && ai == 0.0) {
    d.row = Row::Z2;
    d.result = SpaceSpec::z2(m, n);
    return d;
  }
  if (p == critical && a0 < iqc) {
    d.row = Row::V2;
    d.result = SpaceSpec::classical_lorentz(q, weight_v2(q, a0, ai, m, n));
    return d;
  }
  if (p == critical && q > 1.0 && a0 == iqc) {
    d.row = Row::V3;
    d.result = SpaceSpec::classical_lorentz(q, weight_v3(q, ai, m, n));
    return d;
  }
  if ((p == critical && q == 1.0 && a0 >= 0.0) ||
      (p == critical && q > 1.0 && a0 > iqc) ||
      (p > critical && std::isfinite(p))) {
    d.row = Row::LInfIntersect;
    d.result = SpaceSpec::intersection({SpaceSpec::lebesgue(kInf), X});
    return d;
  }
  if (p == kInf && q == kInf && a0 <= 0.0 && ai > std::ceil(m / 2.0)) {
    d.row = Row::Z3;
    d.result = SpaceSpec::z3(m, n, ai);
    return d;
  }
  if (p == kInf && q == kInf && a0 <= 0.0 && ai <= std::ceil(m / 2.0)) {
    d.row = Row::NonExistent;
    d.nonexistence = nonexistence_certificate(m, n, X);
    d.note = "condition (1+log t)^k/t in X' fails: no r.i. target exists";
    return d;
  }
  d.row = Row::NoRow;
  d.note = "parameters outside the example table";
  return d;
}

RatioReport equivalence_certify(EquivPair pair, int m, int n,
                                const SpaceSpec& X,
                                const std::vector<Fn>& family) {
  if (!(m >= 1 && m < n)) throw_domain("equivalence_certify: need 1 <= m < n");
  // hypotheses per the equivalence proposition
  switch (pair) {
    case EquivPair::NuSigma:
      require(maximal_operator_bounded_on_associate(X),
              "f -> f** bounded on X' (nu ~ sigma)");
      break;
    case EquivPair::SigmaLambda:
    case EquivPair::NuMu: {
      require(maximal_operator_bounded(X),
              "f -> f** bounded on X (sigma ~ lambda / nu ~ mu)");
      PowerLogFunction logcond = existence_function(m);
      require(powerlog_membership(logcond, X),
              "(1+log t)^k/t chi_(1,inf) in X (sigma ~ lambda / nu ~ mu)");
      break;
    }
  }
  const auto first = pair == EquivPair::NuSigma || pair == EquivPair::NuMu
                         ? SpaceSpec::OpKind::Nu
                         : SpaceSpec::OpKind::Sigma;
  const auto second = pair == EquivPair::NuSigma ? SpaceSpec::OpKind::Sigma
                      : pair == EquivPair::SigmaLambda
                          ? SpaceSpec::OpKind::Lambda
                          : SpaceSpec::OpKind::Mu;
  RatioReport rep;
  rep.family_size = family.size();
  rep.min_ratio = kInf;
  for (const Fn& f : family) {
    if (f.is_zero()) continue;
    const NormValue a = functional_value(first, m, n, X, f);
    const NormValue b = functional_value(second, m, n, X, f);
    if (!(a.value > 0.0) || !(b.value > 0.0)) continue;
    if (!a.finite() || !b.finite()) continue;
    const double r = a.value / b.value;
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.compared;
  }
  return rep;
}

DecompositionReport intersection_decomposition_check(
    DecompositionCase which, int m, int n, double p, double q, double a0,
    double ai, const std::vector<Fn>& family) {
  SpaceSpec lhs = SpaceSpec::lebesgue(1.0);
  SpaceSpec rhs = lhs;
  const double k = hardy::derive_k(m);
  switch (which) {
    case DecompositionCase::V1:
      lhs = SpaceSpec::classical_lorentz(q, weight_v1(p, q, a0, ai, m, n));
      rhs = SpaceSpec::intersection(
          {SpaceSpec::lorentz_zygmund(n * p / (n - m * p), q, a0, ai),
           SpaceSpec::lorentz_zygmund(p, q, a0, ai)});
      break;
    case DecompositionCase::V2:
      lhs = SpaceSpec::classical_lorentz(q, weight_v2(q, a0, ai, m, n));
      rhs = SpaceSpec::intersection(
          {SpaceSpec::lorentz_zygmund(kInf, q, a0 - 1.0, ai),
           SpaceSpec::lorentz_zygmund(static_cast<double>(n) / m, q, a0, ai)});
      break;
    case DecompositionCase::Z1:
      lhs = SpaceSpec::z1(m, n);
      rhs = SpaceSpec::intersection(
          {SpaceSpec::lorentz(static_cast<double>(n) / (n - m), 1.0),
           SpaceSpec::lorentz_zygmund(1.0, kInf, 0.0, -(m - 1) / 2.0)
               .with_star_star()});
      break;
    case DecompositionCase::Z2:
      lhs = SpaceSpec::z2(m, n);
      rhs = SpaceSpec::intersection(
          {SpaceSpec::lorentz(static_cast<double>(n) / (n - m), kInf),
           SpaceSpec::lorentz_zygmund(1.0, kInf, 0.0, -m / 2.0)
               .with_star_star()});
      break;
    case DecompositionCase::Z3:
      lhs = SpaceSpec::z3(m, n, ai);
      rhs = SpaceSpec::intersection(
          {SpaceSpec::lebesgue(kInf),
           SpaceSpec::lorentz_zygmund(kInf, kInf, a0,
                                      ai - std::ceil(m / 2.0))});
      break;
  }
  (void)k;
  DecompositionReport rep;
  rep.min_ratio = kInf;
  for (const Fn& f : family) {
    if (f.is_zero()) continue;
    const NormValue a = norm(lhs, f);
    const NormValue b = norm(rhs, f);
    if (!(a.value > 0.0) || !(b.value > 0.0)) continue;
    if (!a.finite() || !b.finite()) continue;
    const double r = a.value / b.value;
    rep.min_ratio = std::min(rep.min_ratio, r);
    rep.max_ratio = std::max(rep.max_ratio, r);
    ++rep.compared;
  }
  return rep;
}

} // namespace hypsob::target
