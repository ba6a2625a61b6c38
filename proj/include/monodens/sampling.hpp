#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "monodens/sample.hpp"

namespace monodens {

enum class Family { exponential, half_normal, uniform01, custom };

// Behavior of the density at the origin: value, first nonzero derivative
// f^(k)(0), and whether the curvature condition behind the k-indexed limit
// laws holds (it fails for uniform01, whose derivatives all vanish).
struct BoundaryInfo {
  double f0 = 1.0;
  double fk0 = -1.0;
  int k = 1;
  bool satisfies_c2 = true;
};

struct DistributionSpec {
  Family family = Family::exponential;
  std::function<double(double)> custom_quantile;
  std::optional<BoundaryInfo> custom_boundary;

  static DistributionSpec exponential();
  static DistributionSpec half_normal();
  static DistributionSpec uniform01();
  static DistributionSpec custom(std::function<double(double)> quantile,
                                 std::optional<BoundaryInfo> boundary);

  double quantile(double u) const;  // u in (0,1)
  bool has_cdf() const { return family != Family::custom; }
  double cdf(double x) const;       // built-in families only
};

Family family_from_name(const std::string& name);
std::string family_name(Family f);

// n inverse-CDF draws from the (seed, stream) substream, sorted.  The same
// arguments always reproduce the same sample bit for bit.
Sample draw(const DistributionSpec& spec, std::size_t n, std::uint64_t seed,
            std::uint64_t stream);

BoundaryInfo analytic_boundary(const DistributionSpec& spec);

}  // namespace monodens
