#pragma once

#include <cstdint>
#include <vector>

namespace monodens {

// Standard Brownian motion sampled on a uniform grid of span `step` up to
// `horizon`; `neg` carries the branch at -step, -2*step, ... when two-sided.
struct BrownianPath {
  double horizon = 0.0;
  double step = 0.0;
  std::vector<double> pos;  // W(0), W(h), ..., W(T)
  std::vector<double> neg;  // W(-h), ..., W(-T); empty when one-sided

  bool two_sided() const { return !neg.empty(); }
};

// pre: horizon an integer multiple of step.  The same (seed, stream) always
// yields the same path; the positive branch consumes the substream first.
BrownianPath simulate_path(double horizon, double step, bool two_sided,
                           std::uint64_t seed, std::uint64_t stream);

// Grid refinement by Brownian-bridge midpoints.  The coarse values are kept
// bit for bit; midpoint noise comes from a salted substream of the same
// (seed, stream), so refined and base paths are coupled for common-random-
// number comparisons.
BrownianPath refine_half(const BrownianPath& p, std::uint64_t seed,
                         std::uint64_t stream);

// Extends both branches to new_horizon >= horizon with fresh increments
// from another salted substream; existing values are kept bit for bit.
BrownianPath extend_horizon(const BrownianPath& p, double new_horizon,
                            std::uint64_t seed, std::uint64_t stream);

}  // namespace monodens
