#include "core/pw_expr.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "core/errors.hpp"

namespace hypsob {

namespace {

constexpr double kPowerEq = 1e-11; // powers closer than this are identical

bool term_less(const PLTerm& a, const PLTerm& b) {
  if (std::abs(a.power - b.power) > kPowerEq) return a.power < b.power;
  return a.logk < b.logk;
}

// Merge identical (power, logk) terms; drop coefficients that are pure
// cancellation residue relative to the gross magnitude that produced them.
PLPoly canonicalize(PLPoly p) {
  std::sort(p.begin(), p.end(), term_less);
  PLPoly out;
  std::vector<double> gross;
  for (const PLTerm& t : p) {
    if (t.coef == 0.0) continue;
    if (!out.empty() && std::abs(out.back().power - t.power) <= kPowerEq &&
        out.back().logk == t.logk) {
      out.back().coef += t.coef;
      gross.back() += std::abs(t.coef);
    } else {
      out.push_back(t);
      gross.push_back(std::abs(t.coef));
    }
  }
  PLPoly pruned;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (std::abs(out[i].coef) > 1e-13 * gross[i]) pruned.push_back(out[i]);
  }
  return pruned;
}

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

} // namespace

double poly_eval(const PLPoly& poly, double t) {
  const double lt = std::log(t);
  double acc = 0.0;
  for (const PLTerm& term : poly) {
    double v = term.coef * std::pow(t, term.power);
    for (int j = 0; j < term.logk; ++j) v *= lt;
    acc += v;
  }
  return acc;
}

PLPoly poly_add(const PLPoly& a, const PLPoly& b) {
  PLPoly r = a;
  r.insert(r.end(), b.begin(), b.end());
  return canonicalize(std::move(r));
}

PLPoly poly_mul(const PLPoly& a, const PLPoly& b) {
  PLPoly r;
  r.reserve(a.size() * b.size());
  for (const PLTerm& x : a)
    for (const PLTerm& y : b)
      r.push_back({x.coef * y.coef, x.power + y.power, x.logk + y.logk});
  return canonicalize(std::move(r));
}

PLPoly poly_scale(const PLPoly& a, double c) {
  PLPoly r = a;
  for (PLTerm& t : r) t.coef *= c;
  return canonicalize(std::move(r));
}

PLPoly poly_antiderivative(const PLPoly& a) {
  PLPoly r;
  for (const PLTerm& t : a) {
    if (std::abs(t.power + 1.0) <= kPowerEq) {
      r.push_back({t.coef / (t.logk + 1), 0.0, t.logk + 1});
    } else {
      // int t^p ln^k = t^(p+1) sum_j (-1)^(k-j) (k!/j!) ln^j / (p+1)^(k-j+1)
      const double q = t.power + 1.0;
      double fact = 1.0; // k!/j! built downward
      double denom = q;
      r.push_back({t.coef / denom, q, t.logk});
      for (int j = t.logk - 1; j >= 0; --j) {
        fact *= (j + 1);
        denom *= q;
        const double sign = ((t.logk - j) % 2 == 0) ? 1.0 : -1.0;
        r.push_back({sign * t.coef * fact / (denom * q) * q, q, j});
      }
    }
  }
  return canonicalize(std::move(r));
}

PwExpr::PwExpr(std::vector<double> knots, std::vector<PLPoly> polys)
    : knots_(std::move(knots)), polys_(std::move(polys)) {
  normalize();
}

void PwExpr::normalize() {
  if (polys_.size() != knots_.size() + 1)
    throw_domain("PwExpr: knots/polys size mismatch");
  for (PLPoly& p : polys_) p = canonicalize(std::move(p));
  // Merge adjacent pieces with identical polynomials.
  std::vector<double> knots;
  std::vector<PLPoly> polys;
  polys.push_back(polys_[0]);
  auto same = [](const PLPoly& a, const PLPoly& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i].logk != b[i].logk) return false;
      if (std::abs(a[i].power - b[i].power) > kPowerEq) return false;
      const double scale = std::max(std::abs(a[i].coef), std::abs(b[i].coef));
      if (std::abs(a[i].coef - b[i].coef) > 1e-13 * scale) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < knots_.size(); ++i) {
    if (same(polys.back(), polys_[i + 1])) continue;
    knots.push_back(knots_[i]);
    polys.push_back(polys_[i + 1]);
  }
  knots_ = std::move(knots);
  polys_ = std::move(polys);
}

bool PwExpr::is_zero() const {
  for (const PLPoly& p : polys_)
    if (!p.empty()) return false;
  return true;
}

PwExpr PwExpr::constant(double c) {
  if (c == 0.0) return PwExpr();
  return PwExpr({}, {PLPoly{{c, 0.0, 0}}});
}

PwExpr PwExpr::single(PLPoly poly) { return PwExpr({}, {std::move(poly)}); }

PwExpr PwExpr::from_step(const StepFunction& f) {
  if (f.is_zero()) return PwExpr();
  std::vector<double> knots(f.breakpoints());
  std::vector<PLPoly> polys;
  for (double v : f.values())
    polys.push_back(v == 0.0 ? PLPoly{} : PLPoly{{v, 0.0, 0}});
  polys.push_back({}); // zero beyond the support
  return PwExpr(std::move(knots), std::move(polys));
}

PwExpr PwExpr::phi_kernel(double alpha, const Dimension& dim) {
  if (!(alpha >= 0.0 && alpha < dim.n)) throw_domain("phi_kernel: alpha not in [0, n)");
  if (alpha == 0.0) return PwExpr({}, {PLPoly{{1.0, -1.0, 0}}});
  return PwExpr({1.0}, {PLPoly{{1.0, -1.0 + alpha / dim.n, 0}},
                        PLPoly{{1.0, -1.0, 0}}});
}

PwExpr PwExpr::phi_antiderivative(double alpha, const Dimension& dim) {
  if (!(alpha >= 0.0 && alpha < dim.n)) throw_domain("phi_antiderivative: alpha not in [0, n)");
  if (alpha == 0.0) return PwExpr({}, {PLPoly{{1.0, 0.0, 1}}});
  const double r = alpha / dim.n;
  return PwExpr({1.0}, {PLPoly{{dim.n / alpha, r, 0}, {-dim.n / alpha, 0.0, 0}},
                        PLPoly{{1.0, 0.0, 1}}});
}

double PwExpr::operator()(double t) const {
  if (!(t > 0.0)) throw_domain("PwExpr eval: t must be positive");
  if (polys_.empty()) return 0.0;
  const auto it = std::lower_bound(knots_.begin(), knots_.end(), t);
  const std::size_t idx = static_cast<std::size_t>(it - knots_.begin());
  return poly_eval(polys_[idx], t);
}

PwExpr PwExpr::operator+(const PwExpr& other) const {
  if (polys_.empty()) return other;
  if (other.polys_.empty()) return *this;
  std::set<double> cut(knots_.begin(), knots_.end());
  cut.insert(other.knots_.begin(), other.knots_.end());
  std::vector<double> knots(cut.begin(), cut.end());
  std::vector<PLPoly> polys;
  for (std::size_t i = 0; i <= knots.size(); ++i) {
    const double probe = i < knots.size() ? knots[i] : knots.empty() ? 1.0 : 2.0 * knots.back();
    const auto ia = std::lower_bound(knots_.begin(), knots_.end(), probe) - knots_.begin();
    const auto ib = std::lower_bound(other.knots_.begin(), other.knots_.end(), probe) -
                    other.knots_.begin();
    polys.push_back(poly_add(polys_[static_cast<std::size_t>(ia)],
                             other.polys_[static_cast<std::size_t>(ib)]));
  }
  return PwExpr(std::move(knots), std::move(polys));
}

PwExpr PwExpr::operator*(const PwExpr& other) const {
  if (polys_.empty() || other.polys_.empty()) return PwExpr();
  std::set<double> cut(knots_.begin(), knots_.end());
  cut.insert(other.knots_.begin(), other.knots_.end());
  std::vector<double> knots(cut.begin(), cut.end());
  std::vector<PLPoly> polys;
  for (std::size_t i = 0; i <= knots.size(); ++i) {
    const double probe = i < knots.size() ? knots[i] : knots.empty() ? 1.0 : 2.0 * knots.back();
    const auto ia = std::lower_bound(knots_.begin(), knots_.end(), probe) - knots_.begin();
    const auto ib = std::lower_bound(other.knots_.begin(), other.knots_.end(), probe) -
                    other.knots_.begin();
    polys.push_back(poly_mul(polys_[static_cast<std::size_t>(ia)],
                             other.polys_[static_cast<std::size_t>(ib)]));
  }
  return PwExpr(std::move(knots), std::move(polys));
}

PwExpr PwExpr::scaled(double c) const {
  if (c == 0.0) return PwExpr();
  std::vector<PLPoly> polys;
  for (const PLPoly& p : polys_) polys.push_back(poly_scale(p, c));
  if (polys.empty()) return PwExpr();
  return PwExpr(knots_, std::move(polys));
}

PwExpr PwExpr::dilate(double a) const {
  if (!(a > 0.0)) throw_domain("dilate: scale must be positive");
  if (polys_.empty()) return PwExpr();
  const double la = std::log(a);
  std::vector<double> knots(knots_);
  for (double& k : knots) k *= a;
  std::vector<PLPoly> polys;
  for (const PLPoly& p : polys_) {
    PLPoly q;
    for (const PLTerm& t : p) {
      // c (t/a)^p ln^k(t/a) = c a^-p sum_j C(k,j) (-ln a)^(k-j) t^p ln^j t
      const double base = t.coef * std::pow(a, -t.power);
      for (int j = 0; j <= t.logk; ++j) {
        const double c =
            base * binomial(t.logk, j) * std::pow(-la, t.logk - j);
        q.push_back({c, t.power, j});
      }
    }
    polys.push_back(canonicalize(std::move(q)));
  }
  return PwExpr(std::move(knots), std::move(polys));
}

bool PwExpr::integrable_at_zero() const {
  if (polys_.empty() || polys_[0].empty()) return true;
  for (const PLTerm& t : polys_[0])
    if (t.power <= -1.0 + kPowerEq) return false;
  return true;
}

bool PwExpr::tail_integrable() const {
  if (polys_.empty() || polys_.back().empty()) return true;
  for (const PLTerm& t : polys_.back())
    if (t.power >= -1.0 - kPowerEq) return false;
  return true;
}

PwExpr PwExpr::cumulative_from_zero() const {
  if (polys_.empty()) return PwExpr();
  if (!integrable_at_zero())
    throw_divergence("cumulative_from_zero: integrand not integrable at 0");
  std::vector<PLPoly> polys;
  double acc = 0.0; // int_0^{knot[i-1]} f
  double lo = 0.0;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    PLPoly anti = poly_antiderivative(polys_[i]);
    const double at_lo = lo == 0.0 ? 0.0 : poly_eval(anti, lo);
    PLPoly piece = anti;
    piece.push_back({acc - at_lo, 0.0, 0});
    polys.push_back(canonicalize(std::move(piece)));
    if (i < knots_.size()) {
      acc += poly_eval(anti, knots_[i]) - at_lo;
      lo = knots_[i];
    }
  }
  return PwExpr(knots_, std::move(polys));
}

PwExpr PwExpr::cumulative_tail() const {
  if (polys_.empty()) return PwExpr();
  if (!tail_integrable())
    throw_divergence("cumulative_tail: integrand not integrable at infinity");
  std::vector<PLPoly> polys(polys_.size());
  // Last piece: G(t) = -A(t) since A -> 0 at infinity (all powers < -1).
  double acc = 0.0; // int_{knot[i]}^inf f
  {
    PLPoly anti = poly_antiderivative(polys_.back());
    polys.back() = poly_scale(anti, -1.0);
    if (!knots_.empty()) acc = -poly_eval(anti, knots_.back());
  }
  for (std::size_t ri = polys_.size() - 1; ri-- > 0;) {
    const double hi = knots_[ri]; // piece ri lives on (knots[ri-1], knots[ri]]
    PLPoly anti = poly_antiderivative(polys_[ri]);
    PLPoly piece = poly_scale(anti, -1.0);
    piece.push_back({acc + poly_eval(anti, hi), 0.0, 0});
    polys[ri] = canonicalize(std::move(piece));
    if (ri > 0) acc += poly_eval(anti, hi) - poly_eval(anti, knots_[ri - 1]);
  }
  return PwExpr(knots_, std::move(polys));
}

double PwExpr::integral(double a, double b) const {
  if (!(0.0 <= a && a <= b)) throw_domain("integral: need 0 <= a <= b");
  if (polys_.empty() || a == b) return 0.0;
  if (a == 0.0 && !integrable_at_zero())
    throw_divergence("integral: integrand not integrable at 0");
  double acc = 0.0;
  double lo = 0.0;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    const double hi = i < knots_.size() ? knots_[i] : b;
    const double s = std::max(lo, a);
    const double e = std::min(hi, b);
    if (e > s && !polys_[i].empty()) {
      PLPoly anti = poly_antiderivative(polys_[i]);
      const double lower = (s == 0.0) ? 0.0 : poly_eval(anti, s);
      acc += poly_eval(anti, e) - lower;
    }
    lo = hi;
    if (lo >= b) break;
  }
  return acc;
}

double PwExpr::integral_to_inf(double a) const {
  if (polys_.empty()) return 0.0;
  if (!tail_integrable())
    throw_divergence("integral_to_inf: tail not integrable");
  const double start = knots_.empty() ? a : std::max(a, knots_.back());
  PLPoly anti = poly_antiderivative(polys_.back());
  double acc = -poly_eval(anti, start);
  if (start > a) acc += integral(a, start);
  return acc;
}

PwExpr::Leading PwExpr::leading_at_zero() const {
  if (polys_.empty() || polys_[0].empty()) return {0.0, 0.0, 0};
  const PLTerm* lead = &polys_[0][0];
  for (const PLTerm& t : polys_[0]) {
    if (t.power < lead->power - kPowerEq ||
        (std::abs(t.power - lead->power) <= kPowerEq && t.logk > lead->logk))
      lead = &t;
  }
  return {lead->coef, lead->power, lead->logk};
}

PwExpr::Leading PwExpr::leading_at_inf() const {
  if (polys_.empty() || polys_.back().empty()) return {0.0, 0.0, 0};
  const PLTerm* lead = &polys_.back()[0];
  for (const PLTerm& t : polys_.back()) {
    if (t.power > lead->power + kPowerEq ||
        (std::abs(t.power - lead->power) <= kPowerEq && t.logk > lead->logk))
      lead = &t;
  }
  return {lead->coef, lead->power, lead->logk};
}

bool PwExpr::has_compact_support() const {
  return polys_.empty() || polys_.back().empty();
}

double PwExpr::support_end() const {
  if (polys_.empty()) return 0.0;
  if (!has_compact_support()) throw_domain("support_end: support is unbounded");
  return knots_.empty() ? 0.0 : knots_.back();
}

std::string PwExpr::to_string() const {
  std::ostringstream os;
  double lo = 0.0;
  for (std::size_t i = 0; i < polys_.size(); ++i) {
    os << "(" << lo << ", ";
    if (i < knots_.size())
      os << knots_[i];
    else
      os << "inf";
    os << "]: ";
    if (polys_[i].empty()) os << "0";
    for (std::size_t j = 0; j < polys_[i].size(); ++j) {
      const PLTerm& t = polys_[i][j];
      if (j) os << " + ";
      os << t.coef << "*t^" << t.power;
      if (t.logk) os << "*ln^" << t.logk;
    }
    os << "\n";
    if (i < knots_.size()) lo = knots_[i];
  }
  return os.str();
}

} // namespace hypsob
