#include "core/norms.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/ops.hpp"
#include "core/quadrature.hpp"

namespace hypsob {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTruncLo = 1e-8;
constexpr double kTruncHi = 1e8;

ExpTriple zero_triple(const DecreasingProfile& h) {
  return std::isinf(h.zero_limit) ? h.at_zero : ExpTriple{0.0, 0.0, 0.0};
}

// f**(t) tail triple once f* has the given end data.
ExpTriple star_star_inf_triple(const DecreasingProfile& h) {
  if (h.support_end > 0.0) return {-1.0, 0.0, 0.0};
  const ExpTriple e = h.at_inf;
  if (integrable_at_inf(e)) return {-1.0, 0.0, 0.0};
  if (e.power > -1.0 + 1e-12) return e;
  if (e.logp > -1.0 + 1e-12) return {-1.0, e.logp + 1.0, e.loglogp};
  return {-1.0, 0.0, e.loglogp + 1.0};
}

DecreasingProfile star_star_profile(const DecreasingProfile& h) {
  DecreasingProfile p;
  auto cum = h.cumulative;
  p.value = [cum](double t) { return cum(t) / t; };
  p.zero_limit = h.zero_limit;
  p.at_zero = h.at_zero;
  p.support_end = 0.0; // f** never has compact support (unless f == 0)
  if (h.zero_limit == 0.0) p.support_end = h.support_end;
  p.at_inf = star_star_inf_triple(h);
  p.splits = h.splits;
  p.exact = h.exact;
  p.cumulative = [](double) -> double {
    throw_domain("cumulative of a ** profile is not provided");
  };
  return p;
}

DecreasingProfile truncate_head(const DecreasingProfile& h, double tau) {
  DecreasingProfile p = h;
  auto val = h.value;
  p.value = [val, tau](double t) { return t <= tau ? val(t) : 0.0; };
  p.support_end = h.support_end > 0.0 ? std::min(h.support_end, tau) : tau;
  p.at_inf = {0.0, 0.0, 0.0};
  auto cum = h.cumulative;
  p.cumulative = [cum, tau](double t) { return cum(std::min(t, tau)); };
  std::vector<double> splits;
  for (double s : h.splits)
    if (s < tau) splits.push_back(s);
  splits.push_back(tau);
  p.splits = std::move(splits);
  return p;
}

DecreasingProfile shift_tail(const DecreasingProfile& h, double tau) {
  // rearrangement of f* chi_(tau, inf) is t -> f*(t + tau)
  DecreasingProfile p;
  auto val = h.value;
  p.value = [val, tau](double t) { return val(t + tau); };
  p.zero_limit = val(tau * (1.0 + 1e-12));
  p.at_zero = {0.0, 0.0, 0.0};
  p.support_end = h.support_end > 0.0
                      ? (h.support_end > tau ? h.support_end - tau : 1e-300)
                      : 0.0;
  p.at_inf = h.at_inf;
  auto cum = h.cumulative;
  p.cumulative = [cum, tau](double t) { return cum(t + tau) - cum(tau); };
  for (double s : h.splits)
    if (s > tau) p.splits.push_back(s - tau);
  return p;
}

struct WeightSpec {
  ExpTriple near_zero, near_inf;
  std::function<double(double)> eval;
};

WeightSpec lz_weight(double p, double q, double a0, double ai, double b0,
                     double bi) {
  const double ip = (p == kInf) ? 0.0 : 1.0 / p;
  const double iq = (q == kInf) ? 0.0 : 1.0 / q;
  WeightSpec w;
  w.near_zero = {ip - iq, a0, b0};
  w.near_inf = {ip - iq, ai, bi};
  w.eval = [=](double t) {
    const double la = t < 1.0 ? a0 : ai;
    const double lb = t < 1.0 ? b0 : bi;
    double v = std::pow(t, ip - iq);
    if (la != 0.0) v *= std::pow(ell(t), la);
    if (lb != 0.0) v *= std::pow(ellell(t), lb);
    return v;
  };
  return w;
}

WeightSpec lambda_weight_spec(const LambdaWeight& v) {
  WeightSpec w;
  w.near_zero = v.near_zero;
  w.near_inf = v.near_inf;
  w.eval = [v](double t) { return v(t); };
  return w;
}

struct IntResult {
  double value = 0.0;
  std::optional<DivergenceCertificate> div;
};

// Integral of fun over (win_lo, win_hi) with exponent triples at the open
// ends; fun vanishes beyond support_end when support_end > 0.
IntResult integrate_pieces(const std::function<double(double)>& fun,
                           const ExpTriple& at_zero, const ExpTriple& at_inf,
                           std::vector<double> splits, double support_end,
                           double win_lo, double win_hi) {
  QuadOptions opt;
  opt.rel_tol = 1e-10;
  IntResult out;
  double hi = win_hi;
  if (support_end > 0.0) hi = std::min(hi, support_end);
  // divergence checks at the ends actually reached
  if (win_lo == 0.0 && !integrable_at_zero(at_zero)) {
    DivergenceCertificate cert;
    cert.at_infinity = false;
    cert.truncation = kTruncLo;
    cert.growth = at_zero;
    const IntResult trunc = integrate_pieces(fun, at_zero, at_inf, splits,
                                             support_end, kTruncLo, hi);
    cert.truncated_value = trunc.value;
    out.value = kInf;
    out.div = cert;
    return out;
  }
  if (hi == kInf && !integrable_at_inf(at_inf)) {
    DivergenceCertificate cert;
    cert.at_infinity = true;
    cert.truncation = kTruncHi;
    cert.growth = at_inf;
    const IntResult trunc = integrate_pieces(fun, at_zero, at_inf, splits,
                                             support_end, win_lo, kTruncHi);
    cert.truncated_value = trunc.value;
    out.value = kInf;
    out.div = cert;
    return out;
  }
  splits.push_back(1.0);
  std::sort(splits.begin(), splits.end());
  splits.erase(std::unique(splits.begin(), splits.end()), splits.end());
  std::vector<double> cuts;
  for (double s : splits)
    if (s > win_lo && (hi == kInf || s < hi)) cuts.push_back(s);
  double acc = 0.0;
  double lo = win_lo;
  if (lo == 0.0) {
    const double first = cuts.empty() ? (hi == kInf ? 1.0 : hi) : cuts.front();
    acc += integrate_zero_triple(fun, first, at_zero, opt);
    lo = first;
    if (!cuts.empty()) cuts.erase(cuts.begin());
  }
  for (double c : cuts) {
    if (c > lo) acc += integrate_pos(fun, lo, c, 0.0, opt);
    lo = c;
  }
  if (hi == kInf) {
    acc += integrate_tail_triple(fun, lo, at_inf, opt);
  } else if (hi > lo) {
    acc += integrate_pos(fun, lo, hi, 0.0, opt);
  }
  out.value = acc;
  return out;
}

// Supremum of fun over (win_lo, win_hi); growth triples at the open ends.
IntResult sup_pieces(const std::function<double(double)>& fun,
                     const ExpTriple& at_zero, const ExpTriple& at_inf,
                     const std::vector<double>& splits, double support_end,
                     double win_lo, double win_hi) {
  IntResult out;
  double hi = win_hi;
  if (support_end > 0.0) hi = std::min(hi, support_end);
  if (win_lo == 0.0 && !bounded_at_zero(at_zero)) {
    DivergenceCertificate cert;
    cert.at_infinity = false;
    cert.truncation = kTruncLo;
    cert.growth = at_zero;
    cert.truncated_value =
        sup_pieces(fun, at_zero, at_inf, splits, support_end, kTruncLo, hi)
            .value;
    out.value = kInf;
    out.div = cert;
    return out;
  }
  if (hi == kInf && !bounded_at_inf(at_inf)) {
    DivergenceCertificate cert;
    cert.at_infinity = true;
    cert.truncation = kTruncHi;
    cert.growth = at_inf;
    cert.truncated_value =
        sup_pieces(fun, at_zero, at_inf, splits, support_end, win_lo, kTruncHi)
            .value;
    out.value = kInf;
    out.div = cert;
    return out;
  }
  const double scan_lo = win_lo > 0.0 ? win_lo : 1e-12;
  const double scan_hi = hi == kInf ? 1e12 : hi;
  double best = 0.0;
  const int steps = 600;
  std::vector<double> pts;
  pts.reserve(steps + splits.size() + 2);
  for (int i = 0; i <= steps; ++i)
    pts.push_back(scan_lo * std::pow(scan_hi / scan_lo,
                                     static_cast<double>(i) / steps));
  for (double s : splits)
    if (s > scan_lo && s < scan_hi) pts.push_back(s);
  pts.push_back(1.0);
  std::sort(pts.begin(), pts.end());
  double best_t = pts.front();
  for (double t : pts) {
    if (t < scan_lo || t > scan_hi) continue;
    const double v = fun(t);
    if (v > best) {
      best = v;
      best_t = t;
    }
  }
  // golden refinement around the best grid point
  double a = std::max(scan_lo, best_t / 1.2), b = std::min(scan_hi, best_t * 1.2);
  for (int i = 0; i < 60; ++i) {
    const double m1 = a + (b - a) * 0.381966;
    const double m2 = b - (b - a) * 0.381966;
    if (fun(m1) < fun(m2))
      a = m1;
    else
      b = m2;
  }
  out.value = std::max(best, fun(0.5 * (a + b)));
  return out;
}

NormValue result_of(const IntResult& r, double q, bool exact) {
  NormValue nv;
  if (r.div) {
    nv.value = kInf;
    nv.divergence = r.div;
    if (q != kInf && std::isfinite(r.div->truncated_value)) {
      nv.divergence->truncated_value =
          std::pow(r.div->truncated_value, 1.0 / q);
    }
    nv.cert = NormValue::Cert::Quadrature;
    return nv;
  }
  nv.value = q == kInf ? r.value : std::pow(r.value, 1.0 / q);
  nv.cert = exact ? NormValue::Cert::Exact : NormValue::Cert::Quadrature;
  return nv;
}

// || w . h ||_{L^q(win)} for a nonincreasing profile h.
NormValue weighted_norm(double q, const WeightSpec& w,
                        const DecreasingProfile& h, double win_lo,
                        double win_hi) {
  if (h.zero_limit == 0.0) return {0.0, NormValue::Cert::Exact, std::nullopt};
  const ExpTriple hz = zero_triple(h);
  const ExpTriple hi_t = h.support_end > 0.0 ? ExpTriple{0.0, 0.0, 0.0} : h.at_inf;
  auto val = h.value;
  auto weval = w.eval;
  if (q == kInf) {
    auto fun = [val, weval](double t) { return weval(t) * val(t); };
    const IntResult r = sup_pieces(fun, w.near_zero + hz, w.near_inf + hi_t,
                                   h.splits, h.support_end, win_lo, win_hi);
    return result_of(r, q, false);
  }
  auto fun = [val, weval, q](double t) {
    const double v = weval(t) * val(t);
    return v <= 0.0 ? 0.0 : std::pow(v, q);
  };
  const IntResult r = integrate_pieces(
      fun, (w.near_zero + hz).scaled(q), (w.near_inf + hi_t).scaled(q),
      h.splits, h.support_end, win_lo, win_hi);
  return result_of(r, q, false);
}

// Exact closed form for step profiles under pure power weights.
NormValue step_power_norm(double p, double q, const StepFunction& star) {
  NormValue nv;
  nv.cert = NormValue::Cert::Exact;
  if (star.is_zero()) return nv;
  if (q == kInf) {
    double best = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < star.pieces(); ++i) {
      const double t = star.breakpoints()[i];
      const double v = star.values()[i];
      // sup of t^(1/p) v on (prev, t] is at the right endpoint
      best = std::max(best, std::pow(t, p == kInf ? 0.0 : 1.0 / p) * v);
      prev = t;
    }
    nv.value = best;
    return nv;
  }
  double acc = 0.0;
  double prev = 0.0;
  const double e = q / p;
  for (std::size_t i = 0; i < star.pieces(); ++i) {
    const double t = star.breakpoints()[i];
    const double v = star.values()[i];
    if (v > 0.0)
      acc += std::pow(v, q) * (std::pow(t, e) - std::pow(prev, e)) / e;
    prev = t;
  }
  nv.value = std::pow(acc, 1.0 / q);
  return nv;
}

NormValue norm_profile(const SpaceSpec& X, const DecreasingProfile& prof);

// Direct Lebesgue norm: by rearrangement invariance the integral can be
// taken on the function itself, which keeps exact expressions exact and
// avoids the numeric rearrangement entirely.
NormValue lebesgue_norm_direct(double p, const PwExpr& f) {
  NormValue nv;
  if (f.is_zero()) {
    nv.cert = NormValue::Cert::Exact;
    return nv;
  }
  const auto l0 = f.leading_at_zero();
  const auto li = f.leading_at_inf();
  const ExpTriple t0{l0.power, static_cast<double>(l0.logk), 0.0};
  const ExpTriple ti{li.power, static_cast<double>(li.logk), 0.0};
  if (p == kInf) {
    if (l0.coef != 0.0 && !bounded_at_zero(t0)) {
      DivergenceCertificate cert;
      cert.at_infinity = false;
      cert.truncation = kTruncLo;
      cert.growth = t0;
      cert.truncated_value = std::abs(f(kTruncLo));
      nv.value = kInf;
      nv.divergence = cert;
      return nv;
    }
    auto fun = [&f](double t) { return std::abs(f(t)); };
    const IntResult r = sup_pieces(fun, t0, ti, f.knots(),
                                   f.has_compact_support() ? f.support_end() : 0.0,
                                   0.0, kInf);
    return result_of(r, kInf, false);
  }
  const int ip = static_cast<int>(p);
  const bool integer_power = std::abs(p - ip) < 1e-14 && ip >= 1 && ip <= 6;
  if (integer_power) {
    PwExpr pw = f;
    for (int i = 1; i < ip; ++i) pw = pw * f;
    NormValue out;
    if (!pw.integrable_at_zero() || !pw.tail_integrable()) {
      DivergenceCertificate cert;
      cert.at_infinity = pw.integrable_at_zero();
      cert.truncation = cert.at_infinity ? kTruncHi : kTruncLo;
      cert.growth = cert.at_infinity ? ti.scaled(p) : t0.scaled(p);
      const double lo = pw.integrable_at_zero() ? 0.0 : kTruncLo;
      cert.truncated_value = std::pow(pw.integral(lo, kTruncHi), 1.0 / p);
      out.value = kInf;
      out.divergence = cert;
      return out;
    }
    const double edge = f.knots().empty() ? 1.0 : f.knots().back();
    out.value = std::pow(pw.integral(0.0, edge) + pw.integral_to_inf(edge), 1.0 / p);
    out.cert = NormValue::Cert::Exact;
    return out;
  }
  auto fun = [&f, p](double t) {
    const double v = std::abs(f(t));
    return v == 0.0 ? 0.0 : std::pow(v, p);
  };
  const IntResult r = integrate_pieces(fun, t0.scaled(p), ti.scaled(p),
                                       f.knots(),
                                       f.has_compact_support() ? f.support_end() : 0.0,
                                       0.0, kInf);
  return result_of(r, p, false);
}

NormValue intersection_norm(const SpaceSpec& X, const DecreasingProfile& prof) {
  NormValue best{0.0, NormValue::Cert::Exact, std::nullopt};
  for (const SpaceSpec& part : X.parts) {
    const NormValue v = norm_profile(part, prof);
    if (!v.finite()) return v;
    if (v.value > best.value) best.value = v.value;
    if (v.cert != NormValue::Cert::Exact) best.cert = v.cert;
  }
  return best;
}

NormValue sum_norm(const SpaceSpec& X, const DecreasingProfile& prof) {
  // Upper bound: optimize a single breakpoint split f* = head + tail.
  const SpaceSpec& A = X.parts[0];
  const SpaceSpec& B = X.parts[1];
  double best = kInf;
  const NormValue whole_a = norm_profile(A, prof);
  if (whole_a.finite()) best = whole_a.value;
  const NormValue whole_b = norm_profile(B, prof);
  if (whole_b.finite()) best = std::min(best, whole_b.value);
  for (double tau = 1e-4; tau <= 1.01e4; tau *= std::sqrt(10.0)) {
    const NormValue head = norm_profile(A, truncate_head(prof, tau));
    if (!head.finite()) continue;
    const NormValue tail = norm_profile(B, shift_tail(prof, tau));
    if (!tail.finite()) continue;
    best = std::min(best, head.value + tail.value);
  }
  NormValue nv;
  nv.value = best;
  nv.cert = NormValue::Cert::UpperBound;
  if (!std::isfinite(best)) {
    DivergenceCertificate cert;
    cert.at_infinity = true;
    cert.truncation = kTruncHi;
    cert.truncated_value = norm_profile(A, truncate_head(prof, kTruncHi)).value;
    nv.divergence = cert;
  }
  return nv;
}

NormValue z_norm(const SpaceSpec& X, const DecreasingProfile& prof) {
  const int m = X.m;
  const int n = X.n;
  const DecreasingProfile ss = star_star_profile(prof);
  WeightSpec one;
  one.near_zero = one.near_inf = {0.0, 0.0, 0.0};
  one.eval = [](double) { return 1.0; };
  if (X.z_index == 1) {
    // int_0^1 t^((n-m)/n - 1) f*(t) dt + sup_{t>=1} t ell^(-(m-1)/2) f**(t)
    WeightSpec w0;
    w0.near_zero = w0.near_inf = {static_cast<double>(n - m) / n - 1.0, 0.0, 0.0};
    w0.eval = [n, m](double t) { return std::pow(t, static_cast<double>(n - m) / n - 1.0); };
    const NormValue head = weighted_norm(1.0, w0, prof, 0.0, 1.0);
    WeightSpec w1;
    const double k = (m - 1) / 2.0;
    w1.near_zero = w1.near_inf = {1.0, -k, 0.0};
    w1.eval = [k](double t) { return t * std::pow(ell(t), -k); };
    const NormValue sup = weighted_norm(kInf, w1, ss, 1.0, kInf);
    NormValue nv;
    if (!head.finite()) return head;
    if (!sup.finite()) return sup;
    nv.value = head.value + sup.value;
    nv.cert = NormValue::Cert::Quadrature;
    return nv;
  }
  if (X.z_index == 2) {
    WeightSpec w0;
    w0.near_zero = w0.near_inf = {static_cast<double>(n - m) / n, 0.0, 0.0};
    w0.eval = [n, m](double t) { return std::pow(t, static_cast<double>(n - m) / n); };
    const NormValue s0 = weighted_norm(kInf, w0, ss, 0.0, 1.0);
    WeightSpec w1;
    const double k = m / 2.0;
    w1.near_zero = w1.near_inf = {1.0, -k, 0.0};
    w1.eval = [k](double t) { return t * std::pow(ell(t), -k); };
    const NormValue s1 = weighted_norm(kInf, w1, ss, 1.0, kInf);
    if (!s0.finite()) return s0;
    if (!s1.finite()) return s1;
    return {s0.value + s1.value, NormValue::Cert::Quadrature, std::nullopt};
  }
  // Z3: ||f||_inf + sup_{t>=1} ell^(ainf - ceil(m/2)) f**
  NormValue nv;
  if (std::isinf(prof.zero_limit)) {
    nv.value = kInf;
    DivergenceCertificate cert;
    cert.at_infinity = false;
    cert.truncation = kTruncLo;
    cert.truncated_value = prof.value(kTruncLo);
    cert.growth = prof.at_zero;
    nv.divergence = cert;
    return nv;
  }
  WeightSpec w1;
  const double e = X.z_alpha_inf - std::ceil(m / 2.0);
  w1.near_zero = w1.near_inf = {0.0, e, 0.0};
  w1.eval = [e](double t) { return std::pow(ell(t), e); };
  const NormValue sup = weighted_norm(kInf, w1, ss, 1.0, kInf);
  if (!sup.finite()) return sup;
  return {prof.zero_limit + sup.value, NormValue::Cert::Quadrature, std::nullopt};
}

NormValue norm_profile(const SpaceSpec& X, const DecreasingProfile& prof) {
  switch (X.kind) {
    case SpaceSpec::Kind::Lebesgue:
    case SpaceSpec::Kind::Lorentz:
    case SpaceSpec::Kind::LorentzZygmund: {
      const bool plain = X.a0 == 0.0 && X.ai == 0.0 && X.b0 == 0.0 && X.bi == 0.0;
      const DecreasingProfile* h = &prof;
      DecreasingProfile ss;
      if (X.star_star) {
        ss = star_star_profile(prof);
        h = &ss;
      }
      if (X.q == kInf && X.p == kInf && plain && !X.star_star) {
        // L^inf: the essential sup is the limit at zero
        NormValue nv;
        if (std::isinf(prof.zero_limit)) {
          nv.value = kInf;
          DivergenceCertificate cert;
          cert.at_infinity = false;
          cert.truncation = kTruncLo;
          cert.truncated_value = prof.value(kTruncLo);
          cert.growth = prof.at_zero;
          nv.divergence = cert;
          return nv;
        }
        nv.value = prof.zero_limit;
        nv.cert = prof.exact ? NormValue::Cert::Exact : NormValue::Cert::Quadrature;
        return nv;
      }
      return weighted_norm(X.q, lz_weight(X.p, X.q, X.a0, X.ai, X.b0, X.bi), *h,
                           0.0, kInf);
    }
    case SpaceSpec::Kind::ClassicalLorentz: {
      const DecreasingProfile* h = &prof;
      DecreasingProfile ss;
      if (X.star_star) {
        ss = star_star_profile(prof);
        h = &ss;
      }
      return weighted_norm(X.q, lambda_weight_spec(X.weight), *h, 0.0, kInf);
    }
    case SpaceSpec::Kind::Intersection:
      return intersection_norm(X, prof);
    case SpaceSpec::Kind::Sum:
      return sum_norm(X, prof);
    case SpaceSpec::Kind::ZSpace:
      return z_norm(X, prof);
    case SpaceSpec::Kind::OperatorInduced:
      throw_spec("operator-induced norms need the function carrier, not a profile");
  }
  throw_spec("norm_profile: unreachable");
}

Fn star_as_fn(const Fn& f) {
  if (f.is_step()) return Fn(f.step().rearrange());
  if (f.is_expr()) {
    // a nonincreasing exact expression is its own rearrangement
    if (make_profile(f).exact) return f;
    return f.rearrange();
  }
  return f.rearrange();
}

NormValue operator_induced_norm(const SpaceSpec& X, const Fn& f) {
  const int m = X.m;
  const int n = X.n;
  const int k = hardy::derive_k(m);
  const int beta = hardy::derive_beta(m);
  const SpaceSpec& base = X.parts[0];
  const Fn star = star_as_fn(f);
  Fn arg = star;
  switch (X.op_kind) {
    case SpaceSpec::OpKind::Nu: {
      std::vector<OperatorSpec> chain;
      if (m % 2 == 1) chain.push_back(OperatorSpec::op_R(1.0, n));
      const int stages = (m % 2 == 1) ? k : k + 1;
      for (int i = 0; i < stages; ++i) {
        chain.push_back(OperatorSpec::op_H(2.0, n));
        chain.push_back(OperatorSpec::op_P(n));
      }
      arg = apply_operator(OperatorSpec::compose(chain), star);
      break;
    }
    case SpaceSpec::OpKind::Sigma:
      arg = apply_operator(OperatorSpec::iter_R(beta, 2.0, k, n), star);
      break;
    case SpaceSpec::OpKind::Lambda:
      arg = apply_operator(OperatorSpec::op_R(m, n), star);
      break;
    case SpaceSpec::OpKind::Mu: {
      const Fn dstar = apply_operator(OperatorSpec::op_P(n), star);
      if (m % 2 == 1) {
        std::vector<OperatorSpec> chain;
        chain.push_back(OperatorSpec::op_R(1.0, n));
        for (int i = 0; i < k; ++i) chain.push_back(OperatorSpec::op_H(2.0, n));
        arg = apply_operator(OperatorSpec::compose(chain), dstar);
      } else {
        std::vector<OperatorSpec> chain;
        for (int i = 0; i < k + 1; ++i)
          chain.push_back(OperatorSpec::op_H(2.0, n));
        arg = apply_operator(OperatorSpec::compose(chain), dstar);
      }
      break;
    }
  }
  return norm(base, arg);
}

} // namespace

NormValue norm(const SpaceSpec& X, const Fn& f) {
  check_legal(X);
  if (f.is_zero()) return {0.0, NormValue::Cert::Exact, std::nullopt};
  if (X.kind == SpaceSpec::Kind::OperatorInduced)
    return operator_induced_norm(X, f);
  // exact closed form: step function under pure power Lorentz/Lebesgue
  if ((X.kind == SpaceSpec::Kind::Lebesgue || X.kind == SpaceSpec::Kind::Lorentz) &&
      f.is_step() && !X.star_star && std::isfinite(X.p)) {
    return step_power_norm(X.p, X.q, f.step().rearrange());
  }
  if (X.kind == SpaceSpec::Kind::Lebesgue && f.is_step() && X.p == kInf) {
    NormValue nv;
    nv.value = f.step().max_value();
    nv.cert = NormValue::Cert::Exact;
    return nv;
  }
  // Lebesgue norms are rearrangement free: integrate the expression itself
  if (X.kind == SpaceSpec::Kind::Lebesgue && f.is_expr())
    return lebesgue_norm_direct(X.p, f.expr());
  return norm_profile(X, make_profile(f));
}

double truncated_norm(const SpaceSpec& X, const Fn& f, double T) {
  if (f.is_zero()) return 0.0;
  if (X.kind == SpaceSpec::Kind::OperatorInduced) {
    throw_spec("truncated_norm: truncate the operator output instead");
  }
  DecreasingProfile prof = truncate_head(make_profile(f), T);
  const NormValue nv = norm_profile(X, prof);
  return nv.value;
}

NormValue lorentz_quasinorm_raw(double p, double q, const Fn& f) {
  if (f.is_zero()) return {0.0, NormValue::Cert::Exact, std::nullopt};
  if (f.is_step() && std::isfinite(p))
    return step_power_norm(p, q, f.step().rearrange());
  return weighted_norm(q, lz_weight(p, q, 0.0, 0.0, 0.0, 0.0), make_profile(f),
                       0.0, kInf);
}

double pairing_integral(const Fn& f, const Fn& g) {
  if (f.is_step() && g.is_step()) return f.step().inner_product(g.step());
  if (g.is_step() && !f.is_step()) return pairing_integral(g, f);
  if (f.is_step()) {
    const StepFunction& s = f.step();
    double acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < s.pieces(); ++i) {
      const double t = s.breakpoints()[i];
      if (s.values()[i] > 0.0)
        acc += s.values()[i] * (g.integral_up_to(t) - g.integral_up_to(prev));
      prev = t;
    }
    return acc;
  }
  // generic fallback: adaptive over a wide window
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  auto fun = [&](double t) { return f(t) * g(t); };
  double acc = integrate_pos(fun, 1e-10, 1.0, 0.0, opt);
  acc += integrate_pos(fun, 1.0, 1e10, 0.0, opt);
  return acc;
}

std::pair<double, double> holder_gap(const Fn& f, const Fn& g,
                                     const SpaceSpec& X) {
  const double lhs = pairing_integral(f, g);
  const NormValue nf = norm(X, f);
  const NormValue ng = norm(associate_space(X), g);
  return {lhs, nf.value * ng.value};
}

NormValue associate_norm_lower_bound(const SpaceSpec& X, const Fn& f,
                                     const std::vector<Fn>& family) {
  NormValue nv;
  nv.cert = NormValue::Cert::LowerBound;
  const Fn fstar = star_as_fn(f);
  for (const Fn& g : family) {
    const NormValue ng = norm(X, g);
    if (!(ng.value > 0.0) || !ng.finite()) continue;
    const Fn gstar = star_as_fn(g);
    const double v = pairing_integral(fstar, gstar) / ng.value;
    nv.value = std::max(nv.value, v);
  }
  return nv;
}

bool powerlog_membership(const PowerLogFunction& g, const SpaceSpec& space) {
  if (space.kind != SpaceSpec::Kind::Lebesgue &&
      space.kind != SpaceSpec::Kind::Lorentz &&
      space.kind != SpaceSpec::Kind::LorentzZygmund)
    throw_spec("powerlog_membership: requires a Lorentz-Zygmund style space");
  check_legal(space);
  const WeightSpec w = lz_weight(space.p, space.q, space.a0, space.ai, space.b0,
                                 space.bi);
  const bool sup_type = space.q == kInf;
  // contribution near infinity: the rearranged tail keeps the exponents of g
  if (g.supported_near_inf()) {
    if (!vanishes_at_inf(g.at_inf()) && !sup_type) return false;
    ExpTriple e = w.near_inf + g.at_inf();
    if (sup_type) {
      if (!bounded_at_inf(e)) return false;
    } else {
      if (!integrable_at_inf(e.scaled(space.q))) return false;
    }
  }
  // contribution near zero
  ExpTriple gz = g.supported_near_zero() ? g.at_zero() : ExpTriple{0.0, 0.0, 0.0};
  if (g.supported_near_zero() && !bounded_at_zero(gz)) {
    // truly unbounded near zero: exponents of g* match those of g
  } else {
    gz = {0.0, 0.0, 0.0}; // bounded near zero after rearrangement
  }
  ExpTriple e0 = w.near_zero + gz;
  if (sup_type) return bounded_at_zero(e0);
  return integrable_at_zero(e0.scaled(space.q));
}

} // namespace hypsob
