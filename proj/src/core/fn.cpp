#include "core/fn.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace hypsob {

namespace {

ExpTriple leading_to_triple(const PwExpr::Leading& lead) {
  // |c t^p ln^k t| behaves like t^p ell^k at either end.
  return {lead.power, static_cast<double>(lead.logk), 0.0};
}

bool scan_nonincreasing(const std::function<double(double)>& f, double lo,
                        double hi) {
  double prev = std::numeric_limits<double>::infinity();
  const int steps = 400;
  for (int i = 0; i <= steps; ++i) {
    const double t = lo * std::pow(hi / lo, static_cast<double>(i) / steps);
    const double v = f(t);
    if (v > prev * (1.0 + 1e-10) + 1e-300) return false;
    prev = v;
  }
  return true;
}

} // namespace

double Fn::operator()(double t) const {
  return std::visit([&](const auto& f) { return f(t); }, v_);
}

bool Fn::is_zero() const {
  if (is_step()) return step().is_zero();
  if (is_expr()) return expr().is_zero();
  if (std::holds_alternative<GridFunction>(v_)) {
    const auto& g = std::get<GridFunction>(v_);
    return g.max_value() == 0.0;
  }
  return false;
}

double Fn::distribution(double lambda) const {
  if (is_step()) return step().distribution(lambda);
  if (std::holds_alternative<GridFunction>(v_))
    return std::get<GridFunction>(v_).distribution(lambda);
  const DecreasingProfile prof = make_profile(*this);
  if (!(lambda > 0.0)) throw_domain("distribution: lambda must be positive");
  if (lambda >= prof.zero_limit) return 0.0;
  double lo = 1e-300, hi = prof.support_end > 0.0 ? prof.support_end : 1e300;
  if (prof.value(lo) <= lambda) return 0.0;
  for (int i = 0; i < 200 && hi / lo > 1.0 + 1e-13; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (prof.value(mid) > lambda)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

Fn Fn::rearrange() const {
  if (is_step()) return Fn(step().rearrange());
  if (std::holds_alternative<GridFunction>(v_))
    return Fn(std::get<GridFunction>(v_).rearrange());
  const DecreasingProfile prof = make_profile(*this);
  TailBehavior tail = prof.support_end > 0.0
                          ? TailBehavior::zero()
                          : TailBehavior::power_log(prof.at_inf.power,
                                                    prof.at_inf.logp);
  const double t_max = prof.support_end > 0.0 ? prof.support_end : 1e8;
  return Fn(GridFunction::sample(prof.value, tail, 2048, 1e-8, t_max));
}

double Fn::max_rearrange(double t) const {
  if (!(t > 0.0)) throw_domain("max_rearrange: t must be positive");
  if (is_step()) return step().max_rearrange(t);
  const DecreasingProfile prof = make_profile(*this);
  return prof.star_star(t);
}

Fn Fn::dilate(double a) const {
  return std::visit([&](const auto& f) -> Fn {
    using T = std::decay_t<decltype(f)>;
    if constexpr (std::is_same_v<T, PowerLogFunction>) {
      // no closed dilation for windowed power-log: go through a grid
      Fn self(f);
      const DecreasingProfile prof = make_profile(self);
      TailBehavior tail = prof.support_end > 0.0
                              ? TailBehavior::zero()
                              : TailBehavior::power_log(prof.at_inf.power,
                                                        prof.at_inf.logp);
      return Fn(GridFunction::sample([&](double t) { return f(t); }, tail)
                    .dilate(a));
    } else {
      return Fn(f.dilate(a));
    }
  }, v_);
}

double Fn::integral_up_to(double t) const {
  if (is_step()) return step().integral_up_to(t);
  if (is_expr()) return expr().integral(0.0, t);
  if (std::holds_alternative<GridFunction>(v_))
    return std::get<GridFunction>(v_).integral_up_to(t);
  const auto& g = std::get<PowerLogFunction>(v_);
  if (g.supported_near_zero() && !integrable_at_zero(g.at_zero()))
    throw_divergence("integral_up_to: power-log function not integrable at 0");
  QuadOptions opt;
  opt.rel_tol = 1e-10;
  const double lo = g.window == PowerLogFunction::Window::BeyondOne ? 1.0 : 0.0;
  const double hi = g.window == PowerLogFunction::Window::UnitInterval
                        ? std::min(t, 1.0)
                        : t;
  if (hi <= lo) return 0.0;
  double acc = 0.0;
  const double hint = g.at_zero().power;
  if (lo < 1.0 && hi > 1.0) {
    acc += integrate_pos([&](double s) { return g(s); }, lo, 1.0, hint, opt);
    acc += integrate_pos([&](double s) { return g(s); }, 1.0, hi, 0.0, opt);
  } else {
    acc += integrate_pos([&](double s) { return g(s); }, lo, hi, hint, opt);
  }
  return acc;
}

NumericRearrangement::NumericRearrangement(std::function<double(double)> eval,
                                           std::vector<double> splits,
                                           double probe_min, double probe_max,
                                           bool compact_support,
                                           double support_end)
    : eval_(std::move(eval)), compact_(compact_support), support_end_(support_end) {
  std::vector<double> cuts;
  cuts.push_back(probe_min);
  for (double s : splits)
    if (s > probe_min && s < probe_max) cuts.push_back(s);
  cuts.push_back(probe_max);
  std::sort(cuts.begin(), cuts.end());
  std::vector<double> pts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const int fine = 48;
    for (int j = 0; j < fine; ++j) {
      pts.push_back(cuts[i] * std::pow(cuts[i + 1] / cuts[i],
                                       static_cast<double>(j) / fine));
    }
  }
  pts.push_back(probe_max);
  double lo = pts[0];
  double vlo = eval_(lo);
  max_value_ = vlo;
  int dir = 0;
  double prev_t = lo, prev_v = vlo;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double t = pts[i];
    const double v = eval_(t);
    max_value_ = std::max(max_value_, v);
    const int d = v > prev_v ? 1 : (v < prev_v ? -1 : dir);
    if (dir != 0 && d != 0 && d != dir) {
      segments_.push_back({lo, prev_t, vlo, prev_v});
      lo = prev_t;
      vlo = prev_v;
    }
    if (d != 0) dir = d;
    prev_t = t;
    prev_v = v;
  }
  segments_.push_back({lo, prev_t, vlo, prev_v});
  build_cells();
}

void NumericRearrangement::build_cells() {
  // split every monotone segment into fine constant cells, sort by value
  struct Cell {
    double value, measure;
  };
  std::vector<Cell> cells;
  for (const Segment& seg : segments_) {
    if (seg.vlo <= 0.0 && seg.vhi <= 0.0 && eval_(0.5 * (seg.lo + seg.hi)) <= 0.0)
      continue;
    const int fine = 400;
    double prev_t = seg.lo;
    for (int i = 1; i <= fine; ++i) {
      double t;
      if (seg.lo > 0.0 && seg.hi / seg.lo > 16.0) {
        t = seg.lo * std::pow(seg.hi / seg.lo, static_cast<double>(i) / fine);
      } else {
        t = seg.lo + (seg.hi - seg.lo) * static_cast<double>(i) / fine;
      }
      const double mid = 0.5 * (prev_t + t);
      cells.push_back({eval_(mid), t - prev_t});
      prev_t = t;
    }
  }
  std::stable_sort(cells.begin(), cells.end(),
                   [](const Cell& a, const Cell& b) { return a.value > b.value; });
  cell_value_.reserve(cells.size());
  cell_cum_measure_.reserve(cells.size());
  double acc = 0.0;
  for (const Cell& c : cells) {
    if (c.value <= 0.0) break;
    acc += c.measure;
    cell_value_.push_back(c.value);
    cell_cum_measure_.push_back(acc);
  }
}

double NumericRearrangement::distribution(double lambda) const {
  double measure = 0.0;
  for (const Segment& seg : segments_) {
    const bool above_lo = seg.vlo > lambda;
    const bool above_hi = seg.vhi > lambda;
    if (!above_lo && !above_hi) continue;
    if (above_lo && above_hi) {
      measure += seg.hi - seg.lo;
      continue;
    }
    double lo = seg.lo, hi = seg.hi;
    for (int i = 0; i < 100 && hi - lo > 1e-14 * hi; ++i) {
      const double mid = 0.5 * (lo + hi);
      const bool above = eval_(mid) > lambda;
      if (above == above_lo)
        lo = mid;
      else
        hi = mid;
    }
    const double crossing = 0.5 * (lo + hi);
    measure += above_lo ? crossing - seg.lo : seg.hi - crossing;
  }
  return measure;
}

double NumericRearrangement::star(double t) const {
  if (!(t > 0.0)) throw_domain("star: t must be positive");
  if (cell_value_.empty()) return 0.0;
  const auto it =
      std::lower_bound(cell_cum_measure_.begin(), cell_cum_measure_.end(), t);
  if (it == cell_cum_measure_.end()) return 0.0;
  return cell_value_[static_cast<std::size_t>(it - cell_cum_measure_.begin())];
}

double NumericRearrangement::support_measure() const {
  if (!compact_) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (const Segment& seg : segments_) {
    if (seg.vlo > 0.0 || seg.vhi > 0.0) m += seg.hi - seg.lo;
  }
  return m;
}

namespace {

DecreasingProfile profile_from_step(const StepFunction& f) {
  const auto star = std::make_shared<StepFunction>(f.rearrange());
  DecreasingProfile p;
  p.value = [star](double t) { return (*star)(t); };
  p.cumulative = [star](double t) { return star->integral_up_to(t); };
  p.splits = star->breakpoints();
  p.zero_limit = star->max_value();
  p.support_end = star->support_end();
  p.exact = true;
  return p;
}

// Anchored cumulative of a (possibly slow) nonincreasing callable.
std::function<double(double)> anchored_cumulative(
    std::function<double(double)> value, double hi_end) {
  struct Anchors {
    std::function<double(double)> value;
    std::vector<double> ts, vs;
  };
  auto a = std::make_shared<Anchors>();
  a->value = std::move(value);
  double acc = 0.0, prev = 0.0;
  for (double t = 1e-8; prev < hi_end; t *= 1.6) {
    const double stop = std::min(t, hi_end);
    acc += gauss15(a->value, prev, stop);
    a->ts.push_back(stop);
    a->vs.push_back(acc);
    prev = stop;
  }
  return [a](double t) -> double {
    if (a->ts.empty() || t <= a->ts.front())
      return gauss15(a->value, 0.0, t);
    const auto it = std::upper_bound(a->ts.begin(), a->ts.end(), t);
    const std::size_t i = static_cast<std::size_t>(it - a->ts.begin()) - 1;
    if (a->ts[i] == t) return a->vs[i];
    return a->vs[i] + gauss15(a->value, a->ts[i], t);
  };
}

DecreasingProfile profile_from_expr(const PwExpr& f) {
  DecreasingProfile p;
  const auto expr = std::make_shared<PwExpr>(f);
  const bool compact = f.has_compact_support();
  if (scan_nonincreasing([&](double t) { return f(t); }, 1e-9, 1e9)) {
    p.value = [expr](double t) { return std::max(0.0, (*expr)(t)); };
    p.splits = f.knots();
    p.exact = true;
    const auto lead0 = f.leading_at_zero();
    if (lead0.coef == 0.0) {
      p.zero_limit = 0.0;
    } else {
      const ExpTriple t0 = leading_to_triple(lead0);
      if (bounded_at_zero(t0)) {
        p.zero_limit = (*expr)(1e-30);
      } else {
        p.zero_limit = std::numeric_limits<double>::infinity();
        p.at_zero = t0;
      }
    }
    if (compact)
      p.support_end = f.support_end();
    else
      p.at_inf = leading_to_triple(f.leading_at_inf());
    const auto cum = std::make_shared<PwExpr>(f.cumulative_from_zero());
    p.cumulative = [cum](double t) { return (*cum)(t); };
    return p;
  }
  if (!compact && !vanishes_at_inf(leading_to_triple(f.leading_at_inf())))
    throw_divergence("profile: expression does not vanish at infinity");
  const double probe_hi = compact ? f.support_end() : 1e9;
  const auto re = std::make_shared<NumericRearrangement>(
      [expr](double t) { return (*expr)(t); }, f.knots(), 1e-9, probe_hi,
      compact, compact ? f.support_end() : 0.0);
  p.value = [re](double t) { return re->star(t); };
  p.zero_limit = re->max_value();
  if (compact)
    p.support_end = re->support_measure();
  else
    p.at_inf = leading_to_triple(f.leading_at_inf());
  const double cum_hi = p.support_end > 0.0 ? p.support_end : 1e9;
  p.cumulative = anchored_cumulative(p.value, cum_hi);
  return p;
}

DecreasingProfile profile_from_powerlog(const PowerLogFunction& g) {
  DecreasingProfile p;
  const auto fn = std::make_shared<PowerLogFunction>(g);
  const bool near_inf = g.supported_near_inf();
  if (near_inf && !vanishes_at_inf(g.at_inf()))
    throw_divergence("profile: power-log function does not vanish at infinity");
  const double probe_lo =
      g.window == PowerLogFunction::Window::BeyondOne ? 1.0 + 1e-10 : 1e-10;
  const double probe_hi =
      g.window == PowerLogFunction::Window::UnitInterval ? 1.0 - 1e-12 : 1e9;
  const bool monotone =
      scan_nonincreasing([&](double t) { return g(t); }, probe_lo, probe_hi);
  switch (g.window) {
    case PowerLogFunction::Window::BeyondOne: {
      if (monotone) {
        // support starts at 1, so the rearrangement is a unit shift
        p.value = [fn](double t) { return (*fn)(t + 1.0); };
        p.zero_limit = (*fn)(1.0 + 1e-10);
      } else {
        const auto re = std::make_shared<NumericRearrangement>(
            [fn](double t) { return (*fn)(t); }, std::vector<double>{},
            1.0 + 1e-10, 1e12, false, 0.0);
        p.value = [re](double t) { return re->star(t); };
        p.zero_limit = re->max_value();
      }
      p.at_inf = g.at_inf();
      p.cumulative = anchored_cumulative(p.value, 1e9);
      return p;
    }
    case PowerLogFunction::Window::UnitInterval:
    case PowerLogFunction::Window::Full: {
      if (!monotone)
        throw_resolution("profile: non-monotone power-log window not supported");
      p.value = [fn](double t) { return (*fn)(t); };
      if (bounded_at_zero(g.at_zero())) {
        p.zero_limit = (*fn)(1e-30);
      } else {
        p.zero_limit = std::numeric_limits<double>::infinity();
        p.at_zero = g.at_zero();
      }
      if (g.window == PowerLogFunction::Window::UnitInterval)
        p.support_end = 1.0;
      else
        p.at_inf = g.at_inf();
      if (!integrable_at_zero(g.at_zero())) {
        p.cumulative = [](double) -> double {
          throw_divergence("profile cumulative: not integrable at 0");
        };
      } else {
        const double hint = g.at_zero().power;
        p.cumulative = [fn, hint](double t) {
          QuadOptions opt;
          opt.rel_tol = 1e-9;
          double acc = integrate_pos([&](double s) { return (*fn)(s); }, 0.0,
                                     std::min(t, 1.0), hint, opt);
          if (t > 1.0)
            acc += integrate_pos([&](double s) { return (*fn)(s); }, 1.0, t,
                                 0.0, opt);
          return acc;
        };
      }
      return p;
    }
  }
  throw_domain("profile_from_powerlog: unreachable");
}

DecreasingProfile profile_from_grid(const GridFunction& g) {
  const auto star = std::make_shared<GridFunction>(g.rearrange());
  DecreasingProfile p;
  p.value = [star](double t) { return (*star)(t); };
  p.cumulative = [star](double t) { return star->integral_up_to(t); };
  p.zero_limit = star->samples().front();
  const TailBehavior& tail = star->tail();
  if (tail.kind == TailBehavior::Kind::Zero) {
    p.support_end = star->grid().back();
  } else if (tail.kind == TailBehavior::Kind::PowerLog) {
    if (star->samples().back() == 0.0)
      p.support_end = star->grid().back();
    else
      p.at_inf = {tail.power, tail.logexp, 0.0};
  } else {
    throw_resolution("profile: unknown tail spec");
  }
  p.splits = {star->grid().front(), star->grid().back()};
  return p;
}

} // namespace

DecreasingProfile make_profile(const Fn& f) {
  return std::visit([](const auto& v) -> DecreasingProfile {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, StepFunction>) return profile_from_step(v);
    else if constexpr (std::is_same_v<T, PwExpr>) return profile_from_expr(v);
    else if constexpr (std::is_same_v<T, PowerLogFunction>) return profile_from_powerlog(v);
    else return profile_from_grid(v);
  }, f.raw());
}

} // namespace hypsob
