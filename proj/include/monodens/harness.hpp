#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "monodens/boundary.hpp"
#include "monodens/sampling.hpp"
#include "monodens/stats.hpp"

namespace monodens {

// One Monte Carlo experiment: for every sample size, draw `reps` samples,
// evaluate the requested estimators of f(0) on each, and summarize the
// scaled errors n^scale_exponent * (estimate - f(0)).
struct ExperimentConfig {
  DistributionSpec spec = DistributionSpec::exponential();
  std::vector<std::size_t> sizes{50, 100, 200, 10000};
  std::size_t reps = 1000;
  std::vector<ZeroMethod> methods{ZeroMethod::simple_k1};
  double scale_exponent = 1.0 / 3.0;
  std::uint64_t seed = 1;
  // Pilot penalty for the penalized estimator: per-size overrides win,
  // otherwise default_pilot_alpha when auto, otherwise the fixed value.
  bool alpha0_auto = true;
  double alpha0 = 0.0;
  std::map<std::size_t, double> alpha0_by_n;
  double q = 1.0 / 3.0;
  double a = 1.0;  // order statistic index constant, m = floor(a n^{2/3})
  double c_star = kDefaultCStar;
};

// Parses "key = value" lines; '#' lines and blank lines are skipped.  Keys:
// family, n (comma list), reps, estimators (comma list), scaling (n13 or
// n25), seed, alpha0 (auto or a number), alpha0@N, q, a, cstar.  Throws
// std::invalid_argument naming the offending key on unknown or repeated
// keys and malformed values.
ExperimentConfig parse_experiment(const std::string& text);
ExperimentConfig load_experiment_file(const std::string& path);

struct ExperimentCell {
  ZeroMethod method = ZeroMethod::simple_k1;
  std::size_t n = 0;
  MomentSummary stats;
  // Replications whose penalized pilot fit had a single jump, forcing the
  // n^-q curvature floor.  Zero for every other estimator.
  std::size_t flags = 0;
};

struct ExperimentResult {
  // Method-major, sizes in config order within each method.
  std::vector<ExperimentCell> cells;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  std::uint64_t config_hash = 0;
};

// FNV-1a over a canonical rendering of every config field.
std::uint64_t experiment_config_hash(const ExperimentConfig& cfg);

// Samples are shared across estimators within a replication, so method
// columns are comparable under common random numbers.  Reruns with the same
// config reproduce bit for bit.  Throws when an estimator's rate does not
// match the configured scaling (k=2 methods need n25, the rest n13).
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string experiment_csv(const ExperimentResult& r);
// One row per sample size with (mean, var, mse) column groups per
// estimator, plus a provenance line.
std::string experiment_markdown(const ExperimentResult& r);
// Inverse of experiment_csv up to the columns it carries.
std::vector<ExperimentCell> experiment_cells_from_csv(const std::string& csv);

}  // namespace monodens
