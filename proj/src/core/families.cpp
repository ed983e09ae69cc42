#include "core/families.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace hypsob::family {

std::vector<Fn> random_nonincreasing_steps(unsigned seed, std::size_t count,
                                           int max_pieces, double lo,
                                           double hi) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> np(1, max_pieces);
  std::uniform_real_distribution<double> logu(std::log10(lo), std::log10(hi));
  std::uniform_real_distribution<double> val(0.05, 2.0);
  std::vector<Fn> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const int k = np(rng);
    std::vector<double> bp;
    for (int j = 0; j < k; ++j) bp.push_back(std::pow(10.0, logu(rng)));
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    std::vector<double> vals;
    for (std::size_t j = 0; j < bp.size(); ++j) vals.push_back(val(rng));
    out.push_back(Fn{StepFunction(bp, vals).rearrange()});
  }
  return out;
}

std::vector<Fn> indicator_ladder() {
  std::vector<Fn> out;
  for (double a = 1e-3; a <= 1.001e3; a *= 10.0)
    out.push_back(Fn{StepFunction::indicator(0.0, a)});
  return out;
}

std::vector<Fn> critical_powerlogs(const SpaceSpec& X) {
  std::vector<Fn> out;
  if (X.kind != SpaceSpec::Kind::Lebesgue && X.kind != SpaceSpec::Kind::Lorentz &&
      X.kind != SpaceSpec::Kind::LorentzZygmund)
    return out;
  if (!std::isfinite(X.p)) return out;
  const double q = std::isfinite(X.q) ? X.q : 1.0;
  // t^(-1/p) ell^d with d chosen two log powers inside convergence
  {
    PowerLogFunction g;
    g.gamma = 1.0 / X.p;
    g.delta0 = -X.a0 - 2.0 / q;
    g.window = PowerLogFunction::Window::UnitInterval;
    out.push_back(Fn{g});
  }
  {
    PowerLogFunction g;
    g.gamma = 1.0 / X.p;
    g.delta_inf = -X.ai - 2.0 / q;
    g.window = PowerLogFunction::Window::BeyondOne;
    out.push_back(Fn{g});
  }
  return out;
}

std::vector<Fn> reduction_family(unsigned seed, std::size_t count,
                                 const SpaceSpec& X) {
  std::vector<Fn> out = random_nonincreasing_steps(seed, count);
  for (Fn& f : indicator_ladder()) out.push_back(std::move(f));
  for (Fn& f : critical_powerlogs(X)) out.push_back(std::move(f));
  return out;
}

} // namespace hypsob::family
