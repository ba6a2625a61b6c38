#include "monodens/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "monodens/grenander.hpp"
#include "monodens/penalized.hpp"

namespace monodens {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& value,
                                    const std::string& key) {
  std::vector<std::string> items;
  std::string::size_type pos = 0;
  while (true) {
    const auto comma = value.find(',', pos);
    const std::string item = trim(value.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (item.empty())
      throw std::invalid_argument("empty item in list for key '" + key + "'");
    items.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return items;
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + value + "' for key '" + key +
                                "'");
  }
  if (used != value.size() || !std::isfinite(out))
    throw std::invalid_argument("bad number '" + value + "' for key '" + key +
                                "'");
  return out;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  unsigned long long out = 0;
  try {
    out = std::stoull(value, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad integer '" + value + "' for key '" + key +
                                "'");
  }
  if (used != value.size() || value.front() == '-')
    throw std::invalid_argument("bad integer '" + value + "' for key '" + key +
                                "'");
  return out;
}

double required_exponent(ZeroMethod m) {
  return m == ZeroMethod::simple_k2 || m == ZeroMethod::adaptive_k2
             ? 2.0 / 5.0
             : 1.0 / 3.0;
}

void fnv_mix(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  h ^= '|';
  h *= 1099511628211ull;
}

double resolve_alpha0(const ExperimentConfig& cfg, std::size_t n) {
  if (const auto it = cfg.alpha0_by_n.find(n); it != cfg.alpha0_by_n.end())
    return it->second;
  if (cfg.alpha0_auto) return default_pilot_alpha(n);
  return cfg.alpha0;
}

ZeroEstimate evaluate(ZeroMethod method, const Sample& s,
                      const StepDensity& fit, const ExperimentConfig& cfg,
                      std::size_t n, bool* fallback) {
  switch (method) {
    case ZeroMethod::simple_k1:
      return simple_zero(fit, n);
    case ZeroMethod::adaptive_k1:
      return adaptive_zero(fit, n, cfg.c_star);
    case ZeroMethod::simple_k2:
      return simple_zero_k2(fit, n);
    case ZeroMethod::adaptive_k2:
      return adaptive_zero_k2(fit, n, cfg.c_star);
    case ZeroMethod::order_stat:
      return order_stat_zero(s, fit, cfg.a);
    case ZeroMethod::numerical_derivative:
      return numerical_derivative_zero(s, cfg.a);
    case ZeroMethod::endpoint_one:
      return endpoint_one(fit, n, 1.0);
    case ZeroMethod::penalized: {
      const PenalizedZero pz =
          penalized_zero_full(s, resolve_alpha0(cfg, n), cfg.q);
      *fallback = pz.recipe.x_m_fallback;
      return pz.estimate;
    }
  }
  throw std::logic_error("unhandled method");
}

}  // namespace

ExperimentConfig parse_experiment(const std::string& text) {
  ExperimentConfig cfg;
  std::map<std::string, std::string> seen;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected 'key = value', got '" + stripped +
                                  "'");
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("expected 'key = value', got '" + stripped +
                                  "'");
    if (!seen.emplace(key, value).second)
      throw std::invalid_argument("repeated key '" + key + "'");

    if (key == "family") {
      const Family f = family_from_name(value);
      switch (f) {
        case Family::exponential:
          cfg.spec = DistributionSpec::exponential();
          break;
        case Family::half_normal:
          cfg.spec = DistributionSpec::half_normal();
          break;
        case Family::uniform01:
          cfg.spec = DistributionSpec::uniform01();
          break;
        case Family::custom:
          throw std::invalid_argument("family 'custom' has no quantile here");
      }
    } else if (key == "n") {
      cfg.sizes.clear();
      for (const auto& item : split_list(value, key)) {
        const std::uint64_t n = parse_u64(key, item);
        if (n < 2) throw std::invalid_argument("n must be at least 2");
        cfg.sizes.push_back(static_cast<std::size_t>(n));
      }
    } else if (key == "reps") {
      cfg.reps = static_cast<std::size_t>(parse_u64(key, value));
      if (cfg.reps == 0) throw std::invalid_argument("reps must be positive");
    } else if (key == "estimators") {
      cfg.methods.clear();
      for (const auto& item : split_list(value, key))
        cfg.methods.push_back(method_from_name(item));
    } else if (key == "scaling") {
      if (value == "n13")
        cfg.scale_exponent = 1.0 / 3.0;
      else if (value == "n25")
        cfg.scale_exponent = 2.0 / 5.0;
      else
        throw std::invalid_argument("scaling must be n13 or n25, got '" +
                                    value + "'");
    } else if (key == "seed") {
      cfg.seed = parse_u64(key, value);
    } else if (key == "alpha0") {
      if (value == "auto") {
        cfg.alpha0_auto = true;
      } else {
        cfg.alpha0_auto = false;
        cfg.alpha0 = parse_double(key, value);
        if (cfg.alpha0 <= 0.0)
          throw std::invalid_argument("alpha0 must be positive");
      }
    } else if (key.rfind("alpha0@", 0) == 0) {
      const std::uint64_t n = parse_u64(key, key.substr(7));
      const double a0 = parse_double(key, value);
      if (n == 0 || a0 <= 0.0)
        throw std::invalid_argument("bad override '" + key + "'");
      cfg.alpha0_by_n[static_cast<std::size_t>(n)] = a0;
    } else if (key == "q") {
      cfg.q = parse_double(key, value);
      if (cfg.q <= 0.0) throw std::invalid_argument("q must be positive");
    } else if (key == "a") {
      cfg.a = parse_double(key, value);
      if (cfg.a <= 0.0) throw std::invalid_argument("a must be positive");
    } else if (key == "cstar") {
      cfg.c_star = parse_double(key, value);
      if (cfg.c_star <= 0.0)
        throw std::invalid_argument("cstar must be positive");
    } else {
      throw std::invalid_argument("unknown key '" + key + "'");
    }
  }
  return cfg;
}

ExperimentConfig load_experiment_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment(buf.str());
}

std::uint64_t experiment_config_hash(const ExperimentConfig& cfg) {
  std::ostringstream c;
  c << std::setprecision(17);
  c << family_name(cfg.spec.family);
  for (std::size_t n : cfg.sizes) c << ' ' << n;
  c << ' ' << cfg.reps;
  for (ZeroMethod m : cfg.methods) c << ' ' << method_name(m);
  c << ' ' << cfg.scale_exponent << ' ' << cfg.seed << ' ' << cfg.alpha0_auto
    << ' ' << cfg.alpha0;
  for (const auto& [n, a] : cfg.alpha0_by_n) c << ' ' << n << ':' << a;
  c << ' ' << cfg.q << ' ' << cfg.a << ' ' << cfg.c_star;
  std::uint64_t h = 14695981039346656037ull;
  fnv_mix(h, c.str());
  return h;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.sizes.empty()) throw std::invalid_argument("no sample sizes");
  if (cfg.methods.empty()) throw std::invalid_argument("no estimators");
  if (cfg.reps == 0) throw std::invalid_argument("reps must be positive");
  for (ZeroMethod m : cfg.methods) {
    if (m == ZeroMethod::endpoint_one && cfg.spec.family != Family::uniform01)
      throw std::invalid_argument(
          "endpoint_one needs support [0,1]; use family uniform01");
    if (std::fabs(required_exponent(m) - cfg.scale_exponent) > 1e-12)
      throw std::invalid_argument(
          "estimator " + method_name(m) + " needs scaling " +
          (required_exponent(m) == 2.0 / 5.0 ? "n25" : "n13"));
  }

  const BoundaryInfo info = analytic_boundary(cfg.spec);
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_sizes = cfg.sizes.size();

  // draws[mi * n_sizes + si] collects the scaled errors of method mi at
  // size si; one sample per (size, rep) feeds every method.
  std::vector<std::vector<double>> draws(n_methods * n_sizes);
  for (auto& d : draws) d.reserve(cfg.reps);
  std::vector<std::size_t> flags(n_methods * n_sizes, 0);

  for (std::size_t si = 0; si < n_sizes; ++si) {
    const std::size_t n = cfg.sizes[si];
    const double scale = std::pow(static_cast<double>(n), cfg.scale_exponent);
    for (std::size_t rep = 0; rep < cfg.reps; ++rep) {
      const std::uint64_t stream =
          (static_cast<std::uint64_t>(si) << 40) | rep;
      const Sample s = draw(cfg.spec, n, cfg.seed, stream);
      const StepDensity fit = grenander(s);
      for (std::size_t mi = 0; mi < n_methods; ++mi) {
        const ZeroMethod method = cfg.methods[mi];
        const double target =
            method == ZeroMethod::endpoint_one ? 1.0 : info.f0;
        bool fallback = false;
        const ZeroEstimate est = evaluate(method, s, fit, cfg, n, &fallback);
        draws[mi * n_sizes + si].push_back(scale * (est.value - target));
        if (fallback) ++flags[mi * n_sizes + si];
      }
    }
  }

  ExperimentResult out;
  out.reps = cfg.reps;
  out.seed = cfg.seed;
  out.config_hash = experiment_config_hash(cfg);
  out.cells.reserve(n_methods * n_sizes);
  for (std::size_t mi = 0; mi < n_methods; ++mi) {
    for (std::size_t si = 0; si < n_sizes; ++si) {
      ExperimentCell cell;
      cell.method = cfg.methods[mi];
      cell.n = cfg.sizes[si];
      cell.stats = summarize(draws[mi * n_sizes + si]);
      cell.flags = flags[mi * n_sizes + si];
      out.cells.push_back(cell);
    }
  }
  return out;
}

std::string experiment_csv(const ExperimentResult& r) {
  std::ostringstream out;
  out << std::setprecision(10);
  out << "estimator,n,mean,var,mse,se_mean,se_var,flags\n";
  for (const auto& c : r.cells)
    out << method_name(c.method) << ',' << c.n << ',' << c.stats.mean << ','
        << c.stats.var << ',' << c.stats.mse << ',' << c.stats.se_mean << ','
        << c.stats.se_var << ',' << c.flags << '\n';
  return out.str();
}

std::string experiment_markdown(const ExperimentResult& r) {
  std::vector<ZeroMethod> methods;
  std::vector<std::size_t> sizes;
  for (const auto& c : r.cells) {
    if (std::find(methods.begin(), methods.end(), c.method) == methods.end())
      methods.push_back(c.method);
    if (std::find(sizes.begin(), sizes.end(), c.n) == sizes.end())
      sizes.push_back(c.n);
  }
  const auto cell_at = [&r](ZeroMethod m, std::size_t n) {
    for (const auto& c : r.cells)
      if (c.method == m && c.n == n) return &c;
    return static_cast<const ExperimentCell*>(nullptr);
  };

  std::ostringstream out;
  out << std::setprecision(4);
  out << "| n |";
  for (ZeroMethod m : methods)
    out << ' ' << method_name(m) << " mean | " << method_name(m) << " var | "
        << method_name(m) << " mse |";
  out << "\n|---|";
  for (std::size_t i = 0; i < 3 * methods.size(); ++i) out << "---|";
  out << '\n';
  for (std::size_t n : sizes) {
    out << "| " << n << " |";
    for (ZeroMethod m : methods) {
      const ExperimentCell* c = cell_at(m, n);
      if (c)
        out << ' ' << c->stats.mean << " | " << c->stats.var << " | "
            << c->stats.mse << " |";
      else
        out << " | | |";
    }
    out << '\n';
  }
  out << '\n'
      << "reps " << r.reps << ", seed " << r.seed << ", config "
      << std::hex << std::setw(16) << std::setfill('0') << r.config_hash
      << '\n';
  return out.str();
}

std::vector<ExperimentCell> experiment_cells_from_csv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) ||
      line != "estimator,n,mean,var,mse,se_mean,se_var,flags")
    throw std::invalid_argument("bad experiment csv header");
  std::vector<ExperimentCell> cells;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8)
      throw std::invalid_argument("bad experiment csv row: " + line);
    ExperimentCell c;
    c.method = method_from_name(fields[0]);
    c.n = static_cast<std::size_t>(parse_u64("n", fields[1]));
    c.stats.mean = parse_double("mean", fields[2]);
    c.stats.var = parse_double("var", fields[3]);
    c.stats.mse = parse_double("mse", fields[4]);
    c.stats.se_mean = parse_double("se_mean", fields[5]);
    c.stats.se_var = parse_double("se_var", fields[6]);
    c.flags = static_cast<std::size_t>(parse_u64("flags", fields[7]));
    cells.push_back(c);
  }
  return cells;
}

}  // namespace monodens
