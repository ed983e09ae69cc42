#include "core/ops.hpp"

#include <cmath>
#include <sstream>

#include "core/errors.hpp"
#include "core/quadrature.hpp"

namespace hypsob {

namespace {

constexpr std::size_t kGridPoints = 1200;
constexpr double kGridMin = 1e-8;
constexpr double kGridMax = 1e8;

// End behavior of the input needed by the numeric path.
struct EndInfo {
  ExpTriple at_zero;
  ExpTriple at_inf;
  bool compact;
  double support_end;
};

EndInfo end_info(const Fn& f) {
  return std::visit([](const auto& v) -> EndInfo {
    using T = std::decay_t<decltype(v)>;
    if constexpr (std::is_same_v<T, StepFunction>) {
      return {{0, 0, 0}, {0, 0, 0}, true, v.support_end()};
    } else if constexpr (std::is_same_v<T, PwExpr>) {
      const auto l0 = v.leading_at_zero();
      const auto li = v.leading_at_inf();
      return {{l0.power, static_cast<double>(l0.logk), 0},
              {li.power, static_cast<double>(li.logk), 0},
              v.has_compact_support(),
              v.has_compact_support() ? v.support_end() : 0.0};
    } else if constexpr (std::is_same_v<T, PowerLogFunction>) {
      const bool compact = v.window == PowerLogFunction::Window::UnitInterval;
      return {v.supported_near_zero() ? v.at_zero() : ExpTriple{0, 0, 0},
              v.supported_near_inf() ? v.at_inf() : ExpTriple{0, 0, 0}, compact,
              compact ? 1.0 : 0.0};
    } else {
      const TailBehavior& t = v.tail();
      const bool compact = t.kind == TailBehavior::Kind::Zero;
      if (t.kind == TailBehavior::Kind::Unknown)
        throw_divergence("operator application: unknown tail spec");
      return {{0, 0, 0}, {t.power, t.logexp, 0}, compact,
              compact ? v.grid().back() : 0.0};
    }
  }, f.raw());
}

// Tail triple of F(t) = int_0^t f once f has tail triple e at infinity.
ExpTriple cumulative_tail_triple(const ExpTriple& e, bool integrable) {
  if (integrable) return {0.0, 0.0, 0.0}; // F tends to a constant
  if (e.power > -1.0 + 1e-12) return {e.power + 1.0, e.logp, e.loglogp};
  // power == -1
  if (e.logp > -1.0 + 1e-12) return {0.0, e.logp + 1.0, e.loglogp};
  return {0.0, 0.0, e.loglogp + 1.0};
}

std::vector<double> default_grid(const EndInfo& info) {
  double hi = kGridMax;
  if (info.compact && info.support_end > 0.0)
    hi = std::max(10.0, info.support_end * 4.0);
  std::vector<double> g(kGridPoints);
  const double step = std::log(hi / kGridMin) / (kGridPoints - 1);
  for (std::size_t i = 0; i < kGridPoints; ++i)
    g[i] = kGridMin * std::exp(step * i);
  // keep the kernel kink and the support edge on the grid
  g.push_back(1.0);
  if (info.compact && info.support_end > 0.0) g.push_back(info.support_end);
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

} // namespace

OperatorSpec OperatorSpec::op_P(int n) {
  OperatorSpec s;
  s.kind = Kind::P;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::op_Q(int n) {
  OperatorSpec s;
  s.kind = Kind::Q;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::op_R(double alpha, int n) {
  OperatorSpec s;
  s.kind = Kind::R;
  s.alpha = alpha;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::op_H(double alpha, int n) {
  OperatorSpec s;
  s.kind = Kind::H;
  s.alpha = alpha;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::op_T(int m, int n) {
  OperatorSpec s;
  s.kind = Kind::T;
  s.m = m;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::op_S(int m, int n) {
  OperatorSpec s;
  s.kind = Kind::S;
  s.m = m;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::iter_R(double beta, double alpha, int j, int n) {
  OperatorSpec s;
  s.kind = Kind::IterR;
  s.beta = beta;
  s.alpha = alpha;
  s.j = j;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::iter_H(double alpha, int j, double beta, int n) {
  OperatorSpec s;
  s.kind = Kind::IterH;
  s.alpha = alpha;
  s.beta = beta;
  s.j = j;
  s.n = n;
  return s;
}
OperatorSpec OperatorSpec::compose(std::vector<OperatorSpec> children) {
  OperatorSpec s;
  s.kind = Kind::Compose;
  s.children = std::move(children);
  if (s.children.empty()) throw_spec("compose: needs at least one operator");
  s.n = s.children.front().n;
  return s;
}

std::string OperatorSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::P: os << "P"; break;
    case Kind::Q: os << "Q"; break;
    case Kind::R: os << "R_" << alpha; break;
    case Kind::H: os << "H_" << alpha; break;
    case Kind::T: os << "T_" << m; break;
    case Kind::S: os << "S_" << m; break;
    case Kind::IterR: os << "R_" << beta << " o R_" << alpha << "^" << j; break;
    case Kind::IterH: os << "H_" << alpha << "^" << j << " o H_" << beta; break;
    case Kind::Compose: {
      for (std::size_t i = 0; i < children.size(); ++i)
        os << (i ? " o " : "") << children[i].describe();
      break;
    }
  }
  return os.str();
}

GridFunction numeric_R(double alpha, const Fn& f, const Dimension& dim) {
  const EndInfo info = end_info(f);
  if (!integrable_at_zero(info.at_zero))
    throw_divergence("numeric R: input not integrable near 0");
  const std::vector<double> grid = default_grid(info);
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  std::vector<double> vals(grid.size());
  double acc = integrate_pos([&](double s) { return f(s); }, 0.0, grid[0],
                             info.at_zero.power, opt);
  vals[0] = phi(alpha, grid[0], dim) * acc;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    acc += integrate([&](double s) { return f(s); }, grid[i - 1], grid[i], opt);
    vals[i] = phi(alpha, grid[i], dim) * acc;
  }
  const bool tail_int = info.compact || integrable_at_inf(info.at_inf);
  const ExpTriple ftail = cumulative_tail_triple(info.at_inf, tail_int);
  // output tail: phi_alpha = 1/t beyond 1
  return GridFunction(grid, std::move(vals),
                      TailBehavior::power_log(ftail.power - 1.0, ftail.logp));
}

GridFunction numeric_H(double alpha, const Fn& f, const Dimension& dim) {
  const EndInfo info = end_info(f);
  const std::vector<double> grid = default_grid(info);
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  std::vector<double> vals(grid.size());
  double acc = 0.0;
  if (!info.compact) {
    const ExpTriple tail = info.at_inf + ExpTriple{-1.0, 0.0, 0.0};
    acc = integrate_tail_triple(
        [&](double s) { return f(s) * phi(alpha, s, dim); }, grid.back(), tail,
        opt);
  }
  vals.back() = acc;
  for (std::size_t i = grid.size() - 1; i-- > 0;) {
    acc += integrate([&](double s) { return f(s) * phi(alpha, s, dim); },
                     grid[i], grid[i + 1], opt);
    vals[i] = acc;
  }
  TailBehavior tail = TailBehavior::zero();
  if (!info.compact) {
    // int_t^inf s^(p-1) ell^L ~ t^p ell^L for p < 0
    tail = TailBehavior::power_log(info.at_inf.power, info.at_inf.logp);
  }
  return GridFunction(grid, std::move(vals), tail);
}

GridFunction numeric_S(int m, const Fn& f, const Dimension& dim) {
  if (!(m >= 1 && m < dim.n)) throw_domain("numeric S: need 1 <= m < n");
  const int k = hardy::derive_k(m);
  const double beta = hardy::derive_beta(m);
  const EndInfo info = end_info(f);
  const std::vector<double> grid = default_grid(info);
  QuadOptions opt;
  opt.rel_tol = 1e-9;
  double kfact = 1.0;
  for (int i = 2; i <= k; ++i) kfact *= i;
  auto value_at = [&](double t) {
    auto integrand = [&](double s) {
      const double kk = hardy::kernel_integral(2.0, t, s, dim);
      double p = 1.0;
      for (int i = 0; i < k; ++i) p *= kk;
      return f(s) * phi(beta, s, dim) * p;
    };
    double acc = 0.0;
    const double edge = info.compact ? info.support_end : 0.0;
    if (info.compact) {
      if (t >= edge) return 0.0;
      if (t < 1.0 && edge > 1.0) {
        acc += integrate_pos(integrand, t, 1.0, 0.0, opt);
        acc += integrate_pos(integrand, 1.0, edge, 0.0, opt);
      } else {
        acc += integrate_pos(integrand, t, edge, 0.0, opt);
      }
    } else {
      const ExpTriple tail = info.at_inf + ExpTriple{-1.0, static_cast<double>(k), 0.0};
      double start = t;
      if (t < 1.0) {
        acc += integrate_pos(integrand, t, 1.0, 0.0, opt);
        start = 1.0;
      }
      acc += integrate_tail_triple(integrand, start, tail, opt);
    }
    return acc / kfact;
  };
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = value_at(grid[i]);
  TailBehavior tail = TailBehavior::zero();
  if (!info.compact)
    tail = TailBehavior::power_log(info.at_inf.power,
                                   info.at_inf.logp + k);
  return GridFunction(grid, std::move(vals), tail);
}

namespace {

Fn apply_exact(const OperatorSpec& op, const PwExpr& f) {
  const Dimension dim(op.n);
  using K = OperatorSpec::Kind;
  switch (op.kind) {
    case K::P: return Fn(hardy::apply_P(f, dim));
    case K::Q: return Fn(hardy::apply_Q(f, dim));
    case K::R: return Fn(hardy::apply_R(op.alpha, f, dim));
    case K::H: return Fn(hardy::apply_H(op.alpha, f, dim));
    case K::T: return Fn(hardy::apply_T(op.m, f, dim));
    case K::S: return Fn(hardy::apply_S(op.m, f, dim));
    case K::IterR: return Fn(hardy::iterated_R(op.beta, op.alpha, op.j, f, dim));
    case K::IterH: return Fn(hardy::iterated_H(op.alpha, op.j, op.beta, f, dim));
    case K::Compose: {
      Fn acc{f};
      for (auto it = op.children.rbegin(); it != op.children.rend(); ++it)
        acc = apply_operator(*it, acc);
      return acc;
    }
  }
  throw_domain("apply_exact: unreachable");
}

Fn apply_numeric(const OperatorSpec& op, const Fn& f) {
  const Dimension dim(op.n);
  using K = OperatorSpec::Kind;
  switch (op.kind) {
    case K::P: return Fn(numeric_R(0.0, f, dim));
    case K::Q: return Fn(numeric_H(0.0, f, dim));
    case K::R: return Fn(numeric_R(op.alpha, f, dim));
    case K::H: return Fn(numeric_H(op.alpha, f, dim));
    case K::S: return Fn(numeric_S(op.m, f, dim));
    case K::T: {
      if (!(op.m >= 1 && op.m < op.n)) throw_domain("T: need 1 <= m < n");
      const int k = hardy::derive_k(op.m);
      Fn g = (op.m % 2 == 1) ? Fn(numeric_H(1.0, f, dim)) : f;
      const int stages = (op.m % 2 == 1) ? k : k + 1;
      for (int i = 0; i < stages; ++i)
        g = Fn(numeric_H(2.0, Fn(numeric_R(0.0, g, dim)), dim));
      return g;
    }
    case K::IterR: {
      Fn g = f;
      for (int i = 0; i < op.j; ++i) g = Fn(numeric_R(op.alpha, g, dim));
      return Fn(numeric_R(op.beta, g, dim));
    }
    case K::IterH: {
      Fn g = Fn(numeric_H(op.beta, f, dim));
      for (int i = 0; i < op.j; ++i) g = Fn(numeric_H(op.alpha, g, dim));
      return g;
    }
    case K::Compose: {
      Fn acc = f;
      for (auto it = op.children.rbegin(); it != op.children.rend(); ++it)
        acc = apply_operator(*it, acc);
      return acc;
    }
  }
  throw_domain("apply_numeric: unreachable");
}

} // namespace

Fn apply_operator(const OperatorSpec& op, const Fn& f) {
  if (f.is_step()) return apply_exact(op, PwExpr::from_step(f.step()));
  if (f.is_expr()) return apply_exact(op, f.expr());
  return apply_numeric(op, f);
}

} // namespace hypsob
