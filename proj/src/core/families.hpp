#pragma once

#include <vector>

#include "core/fn.hpp"
#include "core/spaces.hpp"

namespace hypsob::family {

// Random nonincreasing step functions: breakpoints log-uniform in [lo, hi],
// 1..max_pieces pieces.  Deterministic in the seed.
std::vector<Fn> random_nonincreasing_steps(unsigned seed, std::size_t count,
                                           int max_pieces = 8,
                                           double lo = 1e-4, double hi = 1e4);

// Structured witnesses chi_(0, a), a in {1e-3, ..., 1e3}.
std::vector<Fn> indicator_ladder();

// Power-log functions near the critical exponents of X (finite X-norm by a
// logarithmic margin); empty when X has no finite primary exponent.
std::vector<Fn> critical_powerlogs(const SpaceSpec& X);

// The suite family: random steps + ladder + critical power-logs.
std::vector<Fn> reduction_family(unsigned seed, std::size_t count,
                                 const SpaceSpec& X);

} // namespace hypsob::family
