#include "monodens/grenander.hpp"

#include <stdexcept>

namespace monodens {

StepDensity grenander(const Sample& s) {
  if (s.size() == 0) throw std::invalid_argument("grenander: empty sample");
  if (!(s.min() > 0.0))
    throw std::invalid_argument("grenander: smallest observation must be > 0");
  const ConcaveMajorant hull = lcm(ecdf_vertices(s));
  const auto& k = hull.knots;
  // Knot-to-knot slopes decrease strictly in long double, but rounding to
  // double can flatten neighbouring segments; merge those so the step
  // heights decrease strictly as doubles too.
  std::vector<std::size_t> starts{0};
  std::vector<double> heights;
  for (std::size_t i = 1; i < k.size(); ++i) {
    std::size_t a = starts.back();
    double h = (k[i].y - k[a].y) / (k[i].x - k[a].x);
    while (!heights.empty() && h >= heights.back()) {
      heights.pop_back();
      starts.pop_back();
      a = starts.back();
      h = (k[i].y - k[a].y) / (k[i].x - k[a].x);
    }
    starts.push_back(i);
    heights.push_back(h);
  }
  StepDensity d;
  d.breakpoints.reserve(starts.size());
  for (std::size_t i : starts) d.breakpoints.push_back(k[i].x);
  d.heights = std::move(heights);
  validate(d);
  return d;
}

double inverse_process(const Sample& s, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("inverse_process: a must be > 0");
  const std::size_t n = s.size();
  double best_t = 0.0;
  double best_v = 0.0;  // F_n(0) - a*0
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && s.values[j + 1] == s.values[i]) ++j;
    const double t = s.values[i];
    const double v = static_cast<double>(j + 1) / n - a * t;
    if (v >= best_v) {  // ties resolved to the last maximizer
      best_v = v;
      best_t = t;
    }
    i = j + 1;
  }
  return best_t;
}

bool switching_check(const Sample& s, double a, double x) {
  const bool lhs = eval(grenander(s), x) <= a;
  const bool rhs = inverse_process(s, a) <= x;
  return lhs == rhs;
}

}  // namespace monodens
