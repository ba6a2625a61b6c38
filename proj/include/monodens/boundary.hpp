#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "monodens/grenander.hpp"

namespace monodens {

enum class ZeroMethod {
  simple_k1,
  adaptive_k1,
  simple_k2,
  adaptive_k2,
  order_stat,
  numerical_derivative,
  endpoint_one,
  penalized,
};

std::string method_name(ZeroMethod m);
ZeroMethod method_from_name(const std::string& name);

// Intermediate quantities behind an adaptive-bandwidth estimate.
struct AdaptiveTuning {
  double c_star = 0.0;
  double b_hat = 0.0;      // plug-in scale constant
  double deriv_hat = 0.0;  // capped derivative estimate at 0
  double bandwidth = 0.0;
};

struct ZeroEstimate {
  double value = 0.0;
  ZeroMethod method = ZeroMethod::simple_k1;
  std::optional<AdaptiveTuning> tuning;
};

inline constexpr double kDefaultCStar = 0.345;

// Estimators of f(0) evaluated against a precomputed fit of sample size n.
// The Sample overloads fit first and forward.
ZeroEstimate simple_zero(const StepDensity& fit, std::size_t n);
ZeroEstimate simple_zero(const Sample& s);

// Capped finite-difference slope estimate at 0; always <= -n^{-1/3}.
double deriv_zero(const StepDensity& fit, std::size_t n);
double deriv_zero(const Sample& s);

ZeroEstimate adaptive_zero(const StepDensity& fit, std::size_t n,
                           double c_star = kDefaultCStar);
ZeroEstimate adaptive_zero(const Sample& s, double c_star = kDefaultCStar);

ZeroEstimate simple_zero_k2(const StepDensity& fit, std::size_t n);
ZeroEstimate simple_zero_k2(const Sample& s);

double second_deriv_zero(const StepDensity& fit, std::size_t n);
double second_deriv_zero(const Sample& s);

ZeroEstimate adaptive_zero_k2(const StepDensity& fit, std::size_t n,
                              double c_star = kDefaultCStar);
ZeroEstimate adaptive_zero_k2(const Sample& s, double c_star = kDefaultCStar);

// Fit evaluated at the m-th order statistic, m = floor(a * n^{2/3}) clamped
// to [1, n].
ZeroEstimate order_stat_zero(const Sample& s, const StepDensity& fit,
                             double a = 1.0);
ZeroEstimate order_stat_zero(const Sample& s, double a = 1.0);

// Histogram-type estimate (m/n) / X_(m), same m as order_stat_zero.
ZeroEstimate numerical_derivative_zero(const Sample& s, double a = 1.0);

// Estimator of f at the right endpoint of a compactly supported density:
// the fit evaluated at max(upper - n^{-1/3}, 0).
ZeroEstimate endpoint_one(const StepDensity& fit, std::size_t n, double upper);
ZeroEstimate endpoint_one(const Sample& s, double upper);

}  // namespace monodens
