#include "monodens/brownian.hpp"

#include <cmath>
#include <stdexcept>

#include "monodens/rng.hpp"

namespace monodens {

namespace {

constexpr std::uint64_t kRefineSalt = 0x5245464931313131ULL;
constexpr std::uint64_t kExtendSalt = 0x4558544e44313131ULL;

std::size_t step_count(double horizon, double step) {
  if (!(step > 0.0) || !(horizon >= step))
    throw std::invalid_argument("path grid: need 0 < step <= horizon");
  const double ratio = horizon / step;
  const double rounded = std::round(ratio);
  if (std::fabs(ratio - rounded) > 1e-6 * rounded)
    throw std::invalid_argument(
        "path grid: horizon must be an integer multiple of step");
  return static_cast<std::size_t>(rounded);
}

void fill_branch(std::vector<double>& out, std::size_t count, double start,
                 double scale, Rng& rng) {
  double w = start;
  for (std::size_t i = 0; i < count; ++i) {
    w += scale * rng.next_normal();
    out.push_back(w);
  }
}

}  // namespace

BrownianPath simulate_path(double horizon, double step, bool two_sided,
                           std::uint64_t seed, std::uint64_t stream) {
  const std::size_t n = step_count(horizon, step);
  BrownianPath p;
  p.horizon = horizon;
  p.step = step;
  const double scale = std::sqrt(step);
  Rng rng(seed, stream);
  p.pos.reserve(n + 1);
  p.pos.push_back(0.0);
  fill_branch(p.pos, n, 0.0, scale, rng);
  if (two_sided) {
    p.neg.reserve(n);
    fill_branch(p.neg, n, 0.0, scale, rng);
  }
  return p;
}

BrownianPath refine_half(const BrownianPath& p, std::uint64_t seed,
                         std::uint64_t stream) {
  if (p.pos.size() < 2) throw std::invalid_argument("refine: empty path");
  BrownianPath out;
  out.horizon = p.horizon;
  out.step = 0.5 * p.step;
  // Midpoint of a bridge over one coarse step: mean of the ends plus noise
  // of variance step/4.
  const double noise = 0.5 * std::sqrt(p.step);
  Rng rng(seed, stream ^ kRefineSalt);
  const auto refine_branch = [&](const std::vector<double>& src, double first,
                                 std::vector<double>& dst) {
    double prev = first;
    for (double next : src) {
      dst.push_back(0.5 * (prev + next) + noise * rng.next_normal());
      dst.push_back(next);
      prev = next;
    }
  };
  out.pos.reserve(2 * p.pos.size() - 1);
  out.pos.push_back(0.0);
  refine_branch({p.pos.begin() + 1, p.pos.end()}, 0.0, out.pos);
  if (p.two_sided()) {
    out.neg.reserve(2 * p.neg.size());
    refine_branch(p.neg, 0.0, out.neg);
  }
  return out;
}

BrownianPath extend_horizon(const BrownianPath& p, double new_horizon,
                            std::uint64_t seed, std::uint64_t stream) {
  if (!(new_horizon >= p.horizon))
    throw std::invalid_argument("extend: new horizon shorter than current");
  const std::size_t total = step_count(new_horizon, p.step);
  BrownianPath out = p;
  out.horizon = new_horizon;
  const std::size_t add = total + 1 - p.pos.size();
  if (add == 0) return out;
  const double scale = std::sqrt(p.step);
  Rng rng(seed, stream ^ kExtendSalt);
  out.pos.reserve(total + 1);
  fill_branch(out.pos, add, 0.0, scale, rng);
  for (std::size_t i = p.pos.size(); i < out.pos.size(); ++i)
    out.pos[i] += p.pos.back();
  if (p.two_sided()) {
    out.neg.reserve(total);
    fill_branch(out.neg, add, 0.0, scale, rng);
    for (std::size_t i = p.neg.size(); i < out.neg.size(); ++i)
      out.neg[i] += p.neg.back();
  }
  return out;
}

}  // namespace monodens
