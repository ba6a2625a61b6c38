#include "monodens/step_density.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace monodens {

void validate(const StepDensity& d) {
  if (d.breakpoints.size() < 2 ||
      d.heights.size() != d.breakpoints.size() - 1)
    throw std::invalid_argument("step density: size mismatch");
  if (d.breakpoints.front() != 0.0)
    throw std::invalid_argument("step density: first breakpoint must be 0");
  for (std::size_t i = 1; i < d.breakpoints.size(); ++i)
    if (!(d.breakpoints[i] > d.breakpoints[i - 1]))
      throw std::invalid_argument("step density: breakpoints not increasing");
  for (std::size_t i = 0; i < d.heights.size(); ++i) {
    if (!(d.heights[i] > 0.0))
      throw std::invalid_argument("step density: nonpositive height");
    if (i > 0 && !(d.heights[i] < d.heights[i - 1]))
      throw std::invalid_argument("step density: heights not decreasing");
  }
}

double eval(const StepDensity& d, double x) {
  if (x < 0.0) throw std::invalid_argument("eval: negative abscissa");
  if (x == 0.0) return d.heights.front();
  if (x > d.breakpoints.back()) return 0.0;
  // First breakpoint >= x; left continuity puts x == b_i in step i.
  auto it = std::lower_bound(d.breakpoints.begin() + 1, d.breakpoints.end(), x);
  return d.heights[static_cast<std::size_t>(it - d.breakpoints.begin()) - 1];
}

double StepDensity::operator()(double x) const { return eval(*this, x); }

double StepDensity::mass() const {
  double m = 0.0;
  for (std::size_t i = 0; i < heights.size(); ++i)
    m += heights[i] * (breakpoints[i + 1] - breakpoints[i]);
  return m;
}

std::string to_csv(const StepDensity& d) {
  std::ostringstream out;
  out.precision(17);
  out << "breakpoint,height\n";
  for (std::size_t i = 0; i < d.heights.size(); ++i)
    out << d.breakpoints[i] << ',' << d.heights[i] << '\n';
  out << d.breakpoints.back() << ",0\n";
  return out.str();
}

StepDensity step_density_from_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("breakpoint,height", 0) != 0)
    throw std::invalid_argument("step density csv: missing header");
  StepDensity d;
  std::vector<double> hs;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    double b, h;
    char comma;
    if (!(ss >> b >> comma >> h) || comma != ',')
      throw std::invalid_argument("step density csv: bad row '" + line + "'");
    d.breakpoints.push_back(b);
    hs.push_back(h);
  }
  if (hs.empty() || hs.back() != 0.0)
    throw std::invalid_argument("step density csv: missing terminal row");
  hs.pop_back();
  d.heights = std::move(hs);
  validate(d);
  return d;
}

}  // namespace monodens
