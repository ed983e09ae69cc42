#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "core/errors.hpp"

namespace hypsob {
namespace {

// Gauss-Kronrod 7-15 pair on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelResult {
  double value;
  double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double result_g = fc * kWg[3];
  double result_k = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double x = h * kXgk[j];
    const double f1 = f(c - x);
    const double f2 = f(c + x);
    result_k += kWgk[j] * (f1 + f2);
    if (j % 2 == 1) result_g += kWg[j / 2] * (f1 + f2);
  }
  result_g *= h;
  result_k *= h;
  const double err = std::abs(result_k - result_g);
  return {result_k, err};
}

thread_local long g_adapt_calls = 0;
double adapt(const std::function<double(double)>& f, double a, double b,
             double tol_abs, int depth, int max_depth) {
  const PanelResult r = gk15(f, a, b);
  if (++g_adapt_calls % 5000000 == 0) {
    std::fprintf(stderr, "[adapt] calls=%ld a=%.6g b=%.6g val=%.6g err=%.6g tol=%.6g depth=%d\n",
                 g_adapt_calls, a, b, r.value, r.error, tol_abs, depth);
  }
  // a panel at its own double-precision floor cannot improve by splitting
  if (r.error <= tol_abs || r.error <= 1e-14 * std::abs(r.value) ||
      depth >= max_depth)
    return r.value;
  const double c = 0.5 * (a + b);
  return adapt(f, a, c, 0.5 * tol_abs, depth + 1, max_depth) +
         adapt(f, c, b, 0.5 * tol_abs, depth + 1, max_depth);
}

} // namespace

double gauss15(const std::function<double(double)>& f, double a, double b) {
  return gk15(f, a, b).value;
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadOptions& opt) {
  if (!(a <= b)) throw_domain("integrate: a > b");
  if (a == b) return 0.0;
  const PanelResult first = gk15(f, a, b);
  const double scale = std::max(std::abs(first.value), opt.abs_tol);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * scale);
  if (first.error <= tol) return first.value;
  return adapt(f, a, b, tol, 0, opt.max_depth);
}

double integrate_pos(const std::function<double(double)>& f, double a, double b,
                     double pow_hint, const QuadOptions& opt) {
  if (!(0.0 <= a && a <= b)) throw_domain("integrate_pos: need 0 <= a <= b");
  if (a == b) return 0.0;
  // Narrow intervals away from zero do not need the log substitution.
  if (a > 0.0 && b / a < 32.0) return integrate(f, a, b, opt);
  double u_lo;
  const double u_hi = std::log(b);
  if (a > 0.0) {
    u_lo = std::log(a);
  } else {
    if (pow_hint <= -1.0)
      throw_divergence("integrate_pos: nonintegrable singularity at 0");
    // e^{(p+1)u} envelope: truncate where the contribution is negligible.
    u_lo = u_hi - 60.0 / (pow_hint + 1.0);
  }
  auto g = [&f](double u) {
    const double t = std::exp(u);
    return f(t) * t;
  };
  return integrate(g, u_lo, u_hi, opt);
}

double integrate_to_inf(const std::function<double(double)>& f, double a,
                        double pow_hint, const QuadOptions& opt) {
  if (!(a > 0.0)) throw_domain("integrate_to_inf: need a > 0");
  if (pow_hint >= -1.0)
    throw_divergence("integrate_to_inf: tail exponent not integrable");
  auto g = [&f](double u) {
    const double t = std::exp(u);
    return f(t) * t;
  };
  const double u_lo = std::log(a);
  // Tail envelope e^{(p+1)u}; 80 e-folds with a log-power safety margin.
  const double u_hi = u_lo + 80.0 / (-pow_hint - 1.0) + 40.0;
  return integrate(g, u_lo, u_hi, opt);
}

double integrate_tail_triple(const std::function<double(double)>& f, double T,
                             const ExpTriple& e, const QuadOptions& opt) {
  if (!integrable_at_inf(e))
    throw_divergence("integrate_tail_triple: tail triple not integrable");
  if (e.power < -1.0 - 1e-9) return integrate_to_inf(f, T, e.power, opt);
  // power == -1: work in u = log t where f(e^u) e^u ~ u^logp ell(u)^loglogp
  double acc = 0.0;
  double start = T;
  if (start < M_E) {
    acc += integrate(f, start, M_E, opt);
    start = M_E;
  }
  auto g = [&f](double u) {
    const double t = std::exp(u);
    return f(t) * t;
  };
  return acc + integrate_tail_triple(g, std::log(start),
                                     {e.logp, e.loglogp, 0.0}, opt);
}

double integrate_zero_triple(const std::function<double(double)>& f, double T,
                             const ExpTriple& e, const QuadOptions& opt) {
  if (!integrable_at_zero(e))
    throw_divergence("integrate_zero_triple: triple not integrable at 0");
  if (e.power > -1.0 + 1e-9) return integrate_pos(f, 0.0, T, e.power, opt);
  // power == -1: reflect t -> 1/t and reuse the tail machinery
  double acc = 0.0;
  double stop = T;
  const double kInvE = 1.0 / M_E;
  if (stop > kInvE) {
    acc += integrate(f, kInvE, stop, opt);
    stop = kInvE;
  }
  // g(s) = f(1/s)/s^2 has tail triple {-power - 2, logp, loglogp} = {-1, ...}
  auto g = [&f](double s) { return f(1.0 / s) / (s * s); };
  return acc + integrate_tail_triple(g, 1.0 / stop,
                                     {-e.power - 2.0, e.logp, e.loglogp}, opt);
}

} // namespace hypsob
