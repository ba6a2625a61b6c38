#include "monodens/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace monodens {

MomentSummary summarize(std::span<const double> draws) {
  const std::size_t n = draws.size();
  if (n == 0) throw std::invalid_argument("summarize: no draws");
  const double dn = static_cast<double>(n);
  double s1 = 0.0;
  for (double d : draws) s1 += d;
  const double mean = s1 / dn;
  double c2 = 0.0, c3 = 0.0, c4 = 0.0, r2 = 0.0, r4 = 0.0;
  for (double d : draws) {
    const double e = d - mean;
    const double e2 = e * e;
    c2 += e2;
    c3 += e2 * e;
    c4 += e2 * e2;
    const double d2 = d * d;
    r2 += d2;
    r4 += d2 * d2;
  }
  MomentSummary m;
  m.n = n;
  m.mean = mean;
  m.var = c2 / dn;
  m.mse = r2 / dn;
  m.se_mean = std::sqrt(m.var / dn);
  // Var of the sample variance: (m4 - m2^2)/n with central moments.
  const double m4 = c4 / dn;
  m.se_var = std::sqrt(std::max(0.0, m4 - m.var * m.var) / dn);
  const double q4 = r4 / dn;
  m.se_mse = std::sqrt(std::max(0.0, q4 - m.mse * m.mse) / dn);
  return m;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty())
    throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na -
                              static_cast<double>(j) / nb));
  }
  return d;
}

double ks_one_sample(std::vector<double> a,
                     const std::function<double(double)>& cdf) {
  if (a.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
  }
  return d;
}

double ks_two_sample_threshold(std::size_t n1, std::size_t n2, double alpha) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  const double h =
      static_cast<double>(n1 + n2) /
      (static_cast<double>(n1) * static_cast<double>(n2));
  return c * std::sqrt(h);
}

}  // namespace monodens
