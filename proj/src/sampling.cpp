#include "monodens/sampling.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "monodens/rng.hpp"

namespace monodens {

namespace {
// sqrt(2/pi), the half-normal density at 0; also |f''(0)|.
constexpr double kHalfNormalF0 = 0.7978845608028654;
}  // namespace

DistributionSpec DistributionSpec::exponential() {
  return {Family::exponential, nullptr, std::nullopt};
}
DistributionSpec DistributionSpec::half_normal() {
  return {Family::half_normal, nullptr, std::nullopt};
}
DistributionSpec DistributionSpec::uniform01() {
  return {Family::uniform01, nullptr, std::nullopt};
}
DistributionSpec DistributionSpec::custom(
    std::function<double(double)> quantile,
    std::optional<BoundaryInfo> boundary) {
  if (!quantile)
    throw std::invalid_argument("custom spec needs a quantile function");
  return {Family::custom, std::move(quantile), boundary};
}

double DistributionSpec::quantile(double u) const {
  switch (family) {
    case Family::exponential:
      return -std::log1p(-u);
    case Family::half_normal:
      return Rng::normal_quantile(0.5 * (1.0 + u));
    case Family::uniform01:
      return u;
    case Family::custom:
      return custom_quantile(u);
  }
  throw std::logic_error("unknown family");
}

double DistributionSpec::cdf(double x) const {
  switch (family) {
    case Family::exponential:
      return x <= 0.0 ? 0.0 : -std::expm1(-x);
    case Family::half_normal:
      return x <= 0.0 ? 0.0 : std::erf(x / std::sqrt(2.0));
    case Family::uniform01:
      return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x);
    case Family::custom:
      break;
  }
  throw std::invalid_argument("no analytic CDF for a custom distribution");
}

Family family_from_name(const std::string& name) {
  if (name == "exponential" || name == "exp") return Family::exponential;
  if (name == "half_normal" || name == "halfnormal")
    return Family::half_normal;
  if (name == "uniform01" || name == "uniform") return Family::uniform01;
  throw std::invalid_argument("unknown family: " + name);
}

std::string family_name(Family f) {
  switch (f) {
    case Family::exponential: return "exponential";
    case Family::half_normal: return "half_normal";
    case Family::uniform01: return "uniform01";
    case Family::custom: return "custom";
  }
  throw std::logic_error("unknown family");
}

Sample draw(const DistributionSpec& spec, std::size_t n, std::uint64_t seed,
            std::uint64_t stream) {
  if (n == 0) throw std::invalid_argument("draw: n must be positive");
  Rng rng(seed, stream);
  std::vector<double> v(n);
  for (auto& x : v) x = spec.quantile(rng.next_unit());
  return ingest(std::move(v));
}

BoundaryInfo analytic_boundary(const DistributionSpec& spec) {
  switch (spec.family) {
    case Family::exponential:
      return {1.0, -1.0, 1, true};
    case Family::half_normal:
      return {kHalfNormalF0, -kHalfNormalF0, 2, true};
    case Family::uniform01:
      return {1.0, 0.0, 1, false};
    case Family::custom:
      if (spec.custom_boundary) return *spec.custom_boundary;
      throw std::invalid_argument("custom spec lacks boundary information");
  }
  throw std::logic_error("unknown family");
}

}  // namespace monodens
