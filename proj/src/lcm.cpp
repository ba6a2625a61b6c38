#include "monodens/lcm.hpp"

#include <algorithm>
#include <stdexcept>

namespace monodens {

std::vector<Point> ecdf_vertices(const Sample& s) {
  const std::size_t n = s.size();
  std::vector<Point> v;
  v.reserve(n + 1);
  v.push_back({0.0, 0.0});
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && s.values[j + 1] == s.values[i]) ++j;
    v.push_back({s.values[i], static_cast<double>(j + 1) / n});
    i = j + 1;
  }
  return v;
}

ConcaveMajorant lcm(std::span<const Point> vertices) {
  if (vertices.empty()) throw std::invalid_argument("lcm: no vertices");
  if (vertices[0].x != 0.0 || vertices[0].y != 0.0)
    throw std::invalid_argument("lcm: vertices must start at (0,0)");
  for (std::size_t i = 1; i < vertices.size(); ++i) {
    if (!(vertices[i].x > vertices[i - 1].x))
      throw std::invalid_argument("lcm: x not strictly increasing");
    if (vertices[i].y < vertices[i - 1].y)
      throw std::invalid_argument("lcm: y decreasing");
  }
  ConcaveMajorant out;
  auto& h = out.knots;
  h.reserve(vertices.size());
  for (const Point& p : vertices) {
    // Pop while the middle point is on or below the chord: upper hull with
    // strictly decreasing slopes, collinear knots dropped.
    while (h.size() >= 2 && cross(h[h.size() - 2], h[h.size() - 1], p) >= 0.0L)
      h.pop_back();
    h.push_back(p);
  }
  return out;
}

double ConcaveMajorant::value_at(double x) const {
  if (knots.empty()) throw std::logic_error("empty majorant");
  if (x <= knots.front().x) return knots.front().y;
  if (x >= knots.back().x) return knots.back().y;
  auto it = std::lower_bound(
      knots.begin(), knots.end(), x,
      [](const Point& p, double t) { return p.x < t; });
  // it points at the first knot with knot.x >= x and is not begin().
  const Point& b = *it;
  if (b.x == x) return b.y;
  const Point& a = *(it - 1);
  return a.y + (b.y - a.y) * (x - a.x) / (b.x - a.x);
}

}  // namespace monodens
