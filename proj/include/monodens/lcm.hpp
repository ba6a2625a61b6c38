#pragma once

#include <span>
#include <vector>

#include "monodens/sample.hpp"

namespace monodens {

struct Point {
  double x;
  double y;
};

// Vertices of the empirical CDF: (0,0) followed by one vertex per distinct
// observation, with ties collapsed into a single vertical jump.
std::vector<Point> ecdf_vertices(const Sample& s);

// Least concave majorant of a set of CDF vertices.  Knots are the touch
// points; slopes between consecutive knots are strictly decreasing.
struct ConcaveMajorant {
  std::vector<Point> knots;

  // Piecewise-linear value; constant beyond the last knot.
  double value_at(double x) const;
};

// Monotone-chain upper hull.  pre: x strictly increasing starting at (0,0),
// y nondecreasing.  Cross products are taken in long double so collinear
// pops are decided consistently with the checks in the test suite.
ConcaveMajorant lcm(std::span<const Point> vertices);

// Orientation of the turn a->b->c, >0 when c lies above the ray a->b.
inline long double cross(const Point& a, const Point& b, const Point& c) {
  return (static_cast<long double>(b.x) - a.x) *
             (static_cast<long double>(c.y) - a.y) -
         (static_cast<long double>(b.y) - a.y) *
             (static_cast<long double>(c.x) - a.x);
}

}  // namespace monodens
