#pragma once

#include "monodens/lcm.hpp"
#include "monodens/sample.hpp"
#include "monodens/step_density.hpp"

namespace monodens {

// Maximum likelihood estimator of a nonincreasing density: the left
// derivative of the least concave majorant of the empirical CDF.
StepDensity grenander(const Sample& s);

// Last location in {0} union the order statistics where t -> F_n(t) - a*t
// is maximal.  pre: a > 0.
double inverse_process(const Sample& s, double a);

// The switching relation ties the two together: the estimator at x is <= a
// exactly when the inverse process at a is <= x.
bool switching_check(const Sample& s, double a, double x);

}  // namespace monodens
