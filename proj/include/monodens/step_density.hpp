#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace monodens {

// Nonincreasing step density on [0, support_end()].  heights[i] is the value
// on (breakpoints[i], breakpoints[i+1]]; evaluation is left-continuous, the
// value at 0 is heights[0], and the value beyond the support is 0.
struct StepDensity {
  std::vector<double> breakpoints;  // 0 = b_0 < b_1 < ... < b_m
  std::vector<double> heights;      // h_1 > h_2 > ... > h_m > 0

  double support_end() const { return breakpoints.back(); }
  double operator()(double x) const;
  double mass() const;
};

double eval(const StepDensity& d, double x);

// CSV with header "breakpoint,height"; row i pairs the left endpoint of a
// step with its height, and a final row carries the support end with
// height 0.
std::string to_csv(const StepDensity& d);
StepDensity step_density_from_csv(std::istream& in);

// Throws std::invalid_argument unless breakpoints/heights satisfy the
// shape invariants above.
void validate(const StepDensity& d);

}  // namespace monodens
