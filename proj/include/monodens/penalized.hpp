#pragma once

#include <cstddef>
#include <optional>

#include "monodens/boundary.hpp"
#include "monodens/sample.hpp"
#include "monodens/step_density.hpp"

namespace monodens {

struct PenalizedFit {
  StepDensity density;
  double alpha = 0.0;
  // (1/n) sum_i log f(X_i) - alpha * f(0+) at the fitted density.
  double objective = 0.0;
  // Second point of jump, absent when the fit has a single jump.
  std::optional<double> x_m;
};

// Maximizer of the penalized likelihood over nonincreasing step densities
// with breakpoints among the order statistics, plus a tail step past the
// largest observation absorbing any leftover mass.  pre: alpha >= 0 and the
// smallest observation positive.
PenalizedFit penalized_fit(const Sample& s, double alpha);

// Data-driven penalty: a pilot fit at alpha0 yields a curvature proxy
// beta_hat = max{v0 (v0 - f(x_m+)) / (2 x_m), n^-q} with f(x_m+) the level
// just past the second jump, and the final penalty is
// 0.649 beta_hat^{-1/3} n^{-2/3}.  When the pilot has a single jump the
// floor n^-q is used alone and x_m_fallback is set.
struct AlphaRecipe {
  double alpha0 = 0.0;
  double q = 1.0 / 3.0;
  double beta_hat = 0.0;
  double alpha_hat = 0.0;
  bool x_m_fallback = false;
  std::optional<double> x_m;
};

AlphaRecipe alpha_recipe(const Sample& s, double alpha0, double q = 1.0 / 3.0);

struct PenalizedZero {
  ZeroEstimate estimate;
  AlphaRecipe recipe;
  PenalizedFit fit;
};

PenalizedZero penalized_zero_full(const Sample& s, double alpha0,
                                  double q = 1.0 / 3.0);
ZeroEstimate penalized_zero(const Sample& s, double alpha0,
                            double q = 1.0 / 3.0);

// Pilot penalty by sample size: anchored at 0.0516, 0.0325, 0.0205 for
// n = 50, 100, 200, the asymptotic rule 0.649 * 0.5^{-1/3} n^{-2/3} for
// n >= 1000, log-log interpolation in between and slope extension below 50.
double default_pilot_alpha(std::size_t n);

}  // namespace monodens
