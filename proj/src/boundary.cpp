#include "monodens/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monodens {

std::string method_name(ZeroMethod m) {
  switch (m) {
    case ZeroMethod::simple_k1: return "simple";
    case ZeroMethod::adaptive_k1: return "adaptive";
    case ZeroMethod::simple_k2: return "simple2";
    case ZeroMethod::adaptive_k2: return "adaptive2";
    case ZeroMethod::order_stat: return "orderstat";
    case ZeroMethod::numerical_derivative: return "numderiv";
    case ZeroMethod::endpoint_one: return "endpoint_one";
    case ZeroMethod::penalized: return "penalized";
  }
  throw std::logic_error("unknown method");
}

ZeroMethod method_from_name(const std::string& name) {
  if (name == "simple") return ZeroMethod::simple_k1;
  if (name == "adaptive") return ZeroMethod::adaptive_k1;
  if (name == "simple2") return ZeroMethod::simple_k2;
  if (name == "adaptive2") return ZeroMethod::adaptive_k2;
  if (name == "orderstat") return ZeroMethod::order_stat;
  if (name == "numderiv") return ZeroMethod::numerical_derivative;
  if (name == "endpoint_one") return ZeroMethod::endpoint_one;
  if (name == "penalized") return ZeroMethod::penalized;
  throw std::invalid_argument("unknown estimator: " + name);
}

namespace {

void require_n(std::size_t n) {
  if (n < 2) throw std::invalid_argument("estimator needs n >= 2");
}

}  // namespace

ZeroEstimate simple_zero(const StepDensity& fit, std::size_t n) {
  require_n(n);
  const double bw = std::pow(static_cast<double>(n), -1.0 / 3.0);
  return {eval(fit, bw), ZeroMethod::simple_k1, std::nullopt};
}

double deriv_zero(const StepDensity& fit, std::size_t n) {
  require_n(n);
  const double dn = static_cast<double>(n);
  const double raw = std::pow(dn, 1.0 / 6.0) *
                     (eval(fit, std::pow(dn, -1.0 / 6.0)) -
                      eval(fit, std::pow(dn, -1.0 / 3.0)));
  return std::min(raw, -std::pow(dn, -1.0 / 3.0));
}

ZeroEstimate adaptive_zero(const StepDensity& fit, std::size_t n,
                           double c_star) {
  require_n(n);
  if (!(c_star > 0.0)) throw std::invalid_argument("c_star must be > 0");
  const double dn = static_cast<double>(n);
  const double f0s = simple_zero(fit, n).value;
  const double d1 = deriv_zero(fit, n);
  const double b_hat =
      std::cbrt(4.0) * std::cbrt(f0s) / std::cbrt(d1 * d1);
  const double bw = c_star * b_hat * std::pow(dn, -1.0 / 3.0);
  AdaptiveTuning t{c_star, b_hat, d1, bw};
  return {eval(fit, bw), ZeroMethod::adaptive_k1, t};
}

ZeroEstimate simple_zero_k2(const StepDensity& fit, std::size_t n) {
  require_n(n);
  const double bw = std::pow(static_cast<double>(n), -1.0 / 5.0);
  return {eval(fit, bw), ZeroMethod::simple_k2, std::nullopt};
}

double second_deriv_zero(const StepDensity& fit, std::size_t n) {
  require_n(n);
  const double dn = static_cast<double>(n);
  const double raw = 2.0 * std::pow(dn, 1.0 / 4.0) *
                     (eval(fit, std::pow(dn, -1.0 / 8.0)) -
                      eval(fit, std::pow(dn, -1.0 / 5.0)));
  return std::min(raw, -std::pow(dn, -1.0 / 5.0));
}

ZeroEstimate adaptive_zero_k2(const StepDensity& fit, std::size_t n,
                              double c_star) {
  require_n(n);
  if (!(c_star > 0.0)) throw std::invalid_argument("c_star must be > 0");
  const double dn = static_cast<double>(n);
  const double f0s = simple_zero_k2(fit, n).value;
  const double d2 = second_deriv_zero(fit, n);
  const double b_hat = std::pow(36.0, 0.2) * std::pow(f0s, 0.2) /
                       std::pow(std::fabs(d2), 0.4);
  const double bw = c_star * b_hat * std::pow(dn, -1.0 / 5.0);
  AdaptiveTuning t{c_star, b_hat, d2, bw};
  return {eval(fit, bw), ZeroMethod::adaptive_k2, t};
}

namespace {

std::size_t order_stat_index(std::size_t n, double a) {
  if (!(a > 0.0)) throw std::invalid_argument("order statistic factor a <= 0");
  const double m = std::floor(a * std::pow(static_cast<double>(n), 2.0 / 3.0));
  const auto mi = static_cast<std::size_t>(std::max(1.0, m));
  return std::min(mi, n);
}

}  // namespace

ZeroEstimate order_stat_zero(const Sample& s, const StepDensity& fit,
                             double a) {
  require_n(s.size());
  const std::size_t m = order_stat_index(s.size(), a);
  return {eval(fit, s.values[m - 1]), ZeroMethod::order_stat, std::nullopt};
}

ZeroEstimate numerical_derivative_zero(const Sample& s, double a) {
  require_n(s.size());
  if (!(s.min() > 0.0))
    throw std::invalid_argument("smallest observation must be > 0");
  const std::size_t m = order_stat_index(s.size(), a);
  const double v =
      (static_cast<double>(m) / static_cast<double>(s.size())) /
      s.values[m - 1];
  return {v, ZeroMethod::numerical_derivative, std::nullopt};
}

ZeroEstimate endpoint_one(const StepDensity& fit, std::size_t n,
                          double upper) {
  require_n(n);
  if (!(upper > 0.0)) throw std::invalid_argument("upper must be > 0");
  const double x =
      std::max(upper - std::pow(static_cast<double>(n), -1.0 / 3.0), 0.0);
  return {eval(fit, x), ZeroMethod::endpoint_one, std::nullopt};
}

ZeroEstimate simple_zero(const Sample& s) {
  return simple_zero(grenander(s), s.size());
}
double deriv_zero(const Sample& s) { return deriv_zero(grenander(s), s.size()); }
ZeroEstimate adaptive_zero(const Sample& s, double c_star) {
  return adaptive_zero(grenander(s), s.size(), c_star);
}
ZeroEstimate simple_zero_k2(const Sample& s) {
  return simple_zero_k2(grenander(s), s.size());
}
double second_deriv_zero(const Sample& s) {
  return second_deriv_zero(grenander(s), s.size());
}
ZeroEstimate adaptive_zero_k2(const Sample& s, double c_star) {
  return adaptive_zero_k2(grenander(s), s.size(), c_star);
}
ZeroEstimate order_stat_zero(const Sample& s, double a) {
  return order_stat_zero(s, grenander(s), a);
}
ZeroEstimate endpoint_one(const Sample& s, double upper) {
  return endpoint_one(grenander(s), s.size(), upper);
}

}  // namespace monodens
