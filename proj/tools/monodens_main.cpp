#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "monodens/grenander.hpp"
#include "monodens/harness.hpp"
#include "monodens/limit_laws.hpp"
#include "monodens/penalized.hpp"
#include "monodens/sampling.hpp"

namespace {

using namespace monodens;

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << text;
}

DistributionSpec spec_from_name(const std::string& name) {
  switch (family_from_name(name)) {
    case Family::exponential: return DistributionSpec::exponential();
    case Family::half_normal: return DistributionSpec::half_normal();
    case Family::uniform01: return DistributionSpec::uniform01();
    case Family::custom: break;
  }
  throw std::invalid_argument("family 'custom' needs a quantile function");
}

int run_fit(const std::string& input, const std::string& out) {
  write_output(to_csv(grenander(load_sample_file(input))), out);
  return 0;
}

int run_sample(const std::string& family, std::size_t n, std::uint64_t seed,
               std::uint64_t rep, const std::string& out) {
  const Sample s = draw(spec_from_name(family), n, seed, rep);
  std::ostringstream text;
  text << std::setprecision(17);
  for (double x : s.values) text << x << '\n';
  write_output(text.str(), out);
  return 0;
}

int run_estimate_zero(const std::string& method_str, const std::string& input,
                      double a, double c_star, double alpha0, double q,
                      double upper) {
  const Sample s = load_sample_file(input);
  const ZeroMethod method = method_from_name(method_str);
  std::ostringstream out;
  out << std::setprecision(12);
  out << "method=" << method_str << '\n';
  out << "n=" << s.size() << '\n';

  if (method == ZeroMethod::penalized) {
    const double pilot = alpha0 > 0.0 ? alpha0 : default_pilot_alpha(s.size());
    const PenalizedZero pz = penalized_zero_full(s, pilot, q);
    out << "value=" << pz.estimate.value << '\n';
    out << "alpha0=" << pz.recipe.alpha0 << '\n';
    out << "q=" << pz.recipe.q << '\n';
    out << "beta_hat=" << pz.recipe.beta_hat << '\n';
    out << "alpha_hat=" << pz.recipe.alpha_hat << '\n';
    if (pz.recipe.x_m)
      out << "x_m=" << *pz.recipe.x_m << '\n';
    out << "x_m_fallback=" << (pz.recipe.x_m_fallback ? 1 : 0) << '\n';
    std::cout << out.str();
    return 0;
  }

  ZeroEstimate est;
  switch (method) {
    case ZeroMethod::simple_k1: est = simple_zero(s); break;
    case ZeroMethod::adaptive_k1: est = adaptive_zero(s, c_star); break;
    case ZeroMethod::simple_k2: est = simple_zero_k2(s); break;
    case ZeroMethod::adaptive_k2: est = adaptive_zero_k2(s, c_star); break;
    case ZeroMethod::order_stat: est = order_stat_zero(s, a); break;
    case ZeroMethod::numerical_derivative:
      est = numerical_derivative_zero(s, a);
      break;
    case ZeroMethod::endpoint_one: est = endpoint_one(s, upper); break;
    case ZeroMethod::penalized: break;
  }
  out << "value=" << est.value << '\n';
  if (est.tuning) {
    out << "c_star=" << est.tuning->c_star << '\n';
    out << "b_hat=" << est.tuning->b_hat << '\n';
    out << "deriv_hat=" << est.tuning->deriv_hat << '\n';
    out << "bandwidth=" << est.tuning->bandwidth << '\n';
  }
  std::cout << out.str();
  return 0;
}

int run_simulate(const std::string& config, const std::string& out,
                 const std::string& format) {
  ExperimentConfig cfg;
  try {
    cfg = load_experiment_file(config);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  ExperimentResult r;
  try {
    r = run_experiment(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
  write_output(format == "markdown" ? experiment_markdown(r)
                                    : experiment_csv(r),
               out);
  for (const auto& cell : r.cells)
    if (static_cast<double>(cell.flags) >
        0.01 * static_cast<double>(r.reps)) {
      std::cerr << "solver fallback in " << cell.flags << "/" << r.reps
                << " replications (" << method_name(cell.method)
                << ", n=" << cell.n << ")\n";
      return 3;
    }
  return 0;
}

int run_table4(std::size_t reps, double horizon, double step,
               std::uint64_t seed, const std::string& out) {
  Table4Options opt;
  opt.reps = reps;
  opt.grid.horizon = horizon;
  opt.grid.step = step;
  opt.seed = seed;
  write_output(table4_csv(table4(opt)), out);
  return 0;
}

int run_cstar(int k, std::size_t reps, std::uint64_t seed,
              const std::string& out) {
  const CStarResult r = estimate_cstar(k, reps, GridSpec{}, seed);
  std::ostringstream text;
  text << std::setprecision(10);
  text << "c_star=" << r.c_star << '\n';
  text << "objective_at_cstar=" << r.objective_at_cstar << '\n';
  text << "reps=" << r.reps << '\n';
  text << "c,mean_square\n";
  for (std::size_t i = 0; i < r.grid_c.size(); ++i)
    text << r.grid_c[i] << ',' << r.mean_square[i] << '\n';
  write_output(text.str(), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decreasing-density estimation toolkit"};
  app.require_subcommand(1);

  auto* fit = app.add_subcommand("fit", "Grenander fit of a sample file");
  std::string fit_input, fit_out;
  fit->add_option("--input", fit_input, "sample file, one value per line")
      ->required();
  fit->add_option("--out", fit_out, "output file (default stdout)");

  auto* sample = app.add_subcommand("sample", "draw a reproducible sample");
  std::string sample_family = "exponential", sample_out;
  std::size_t sample_n = 100;
  std::uint64_t sample_seed = 1, sample_rep = 0;
  sample->add_option("--family", sample_family,
                     "exponential, halfnormal or uniform01");
  sample->add_option("--n", sample_n, "sample size")->required();
  sample->add_option("--seed", sample_seed, "RNG seed");
  sample->add_option("--rep", sample_rep, "replication index (RNG stream)");
  sample->add_option("--out", sample_out, "output file (default stdout)");

  auto* ez = app.add_subcommand("estimate-zero",
                                "boundary estimate from a sample file");
  std::string ez_method, ez_input;
  double ez_a = 1.0, ez_cstar = kDefaultCStar, ez_alpha0 = 0.0,
         ez_q = 1.0 / 3.0, ez_upper = 1.0;
  ez->add_option("--method", ez_method,
                 "simple, adaptive, simple2, adaptive2, orderstat, numderiv, "
                 "endpoint_one or penalized")
      ->required();
  ez->add_option("--input", ez_input, "sample file")->required();
  ez->add_option("--a", ez_a, "order statistic constant");
  ez->add_option("--cstar", ez_cstar, "bandwidth constant");
  ez->add_option("--alpha0", ez_alpha0,
                 "pilot penalty (0 = by sample size)");
  ez->add_option("--q", ez_q, "curvature floor exponent");
  ez->add_option("--upper", ez_upper, "support end for endpoint_one");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo experiment");
  std::string sim_config, sim_out, sim_format = "csv";
  sim->add_option("--config", sim_config, "key = value config file")
      ->required();
  sim->add_option("--out", sim_out, "output file (default stdout)");
  sim->add_option("--format", sim_format, "csv or markdown")
      ->check(CLI::IsMember({"csv", "markdown"}));

  auto* limits = app.add_subcommand("limits", "limit-law Monte Carlo");
  limits->require_subcommand(1);
  auto* t4 = limits->add_subcommand("table4", "limit moments per estimator");
  t4->set_help_flag("--help", "print help");
  std::size_t t4_reps = 100000;
  double t4_T = 10.0, t4_h = 5e-4;
  std::uint64_t t4_seed = 34207;
  std::string t4_out;
  t4->add_option("--reps", t4_reps, "Monte Carlo replications");
  t4->add_option("--T", t4_T, "grid horizon");
  t4->add_option("--h", t4_h, "grid step");
  t4->add_option("--seed", t4_seed, "RNG seed");
  t4->add_option("--out", t4_out, "output file (default stdout)");
  auto* cs = limits->add_subcommand("cstar", "bandwidth constant estimate");
  int cs_k = 1;
  std::size_t cs_reps = 100000;
  std::uint64_t cs_seed = 1;
  std::string cs_out;
  cs->add_option("--k", cs_k, "drift order, 1 or 2")
      ->required()
      ->check(CLI::IsMember({1, 2}));
  cs->add_option("--reps", cs_reps, "Monte Carlo replications");
  cs->add_option("--seed", cs_seed, "RNG seed");
  cs->add_option("--out", cs_out, "output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(fit)) return run_fit(fit_input, fit_out);
    if (app.got_subcommand(sample))
      return run_sample(sample_family, sample_n, sample_seed, sample_rep,
                        sample_out);
    if (app.got_subcommand(ez))
      return run_estimate_zero(ez_method, ez_input, ez_a, ez_cstar, ez_alpha0,
                               ez_q, ez_upper);
    if (app.got_subcommand(sim))
      return run_simulate(sim_config, sim_out, sim_format);
    if (app.got_subcommand(limits)) {
      if (limits->got_subcommand(t4))
        return run_table4(t4_reps, t4_T, t4_h, t4_seed, t4_out);
      if (limits->got_subcommand(cs))
        return run_cstar(cs_k, cs_reps, cs_seed, cs_out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
