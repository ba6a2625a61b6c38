#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace monodens {

// Monte Carlo moments with standard errors.  var and mse use the population
// divisor so mse == var + mean^2 holds as an identity; standard errors come
// from higher sample moments (delta method for var).
struct MomentSummary {
  std::size_t n = 0;
  double mean = 0.0;
  double var = 0.0;
  double mse = 0.0;
  double se_mean = 0.0;
  double se_var = 0.0;
  double se_mse = 0.0;
};

MomentSummary summarize(std::span<const double> draws);

// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
double ks_two_sample(std::vector<double> a, std::vector<double> b);

// One-sample statistic against a continuous CDF.
double ks_one_sample(std::vector<double> a,
                     const std::function<double(double)>& cdf);

// Large-sample critical value c(alpha) * sqrt((n1+n2)/(n1*n2)) with
// c(alpha) = sqrt(-log(alpha/2)/2).
double ks_two_sample_threshold(std::size_t n1, std::size_t n2, double alpha);

}  // namespace monodens
