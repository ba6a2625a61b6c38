#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "monodens/grenander.hpp"
#include "monodens/harness.hpp"
#include "monodens/lcm.hpp"
#include "monodens/limit_laws.hpp"
#include "monodens/penalized.hpp"
#include "monodens/rng.hpp"
#include "monodens/sampling.hpp"
#include "monodens/stats.hpp"

namespace {

using namespace monodens;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

void record(const std::string& name, bool pass, const std::string& detail,
            const std::string& note = "") {
  std::printf("[%s] %s: %s\n", pass ? "pass" : "FAIL", name.c_str(),
              detail.c_str());
  if (!pass && !note.empty()) std::printf("       note: %s\n", note.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

double elapsed_s(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void runtime_check(const std::string& name, Clock::time_point t0,
                   double bound_s) {
  const double e = elapsed_s(t0);
  record(name, e < bound_s, fmt("%.1f s (bound %.0f s)", e, bound_s));
}

struct Target {
  double mean, var, mse;
};

// Tolerance per statistic: max(3 standard errors, floor), or a flat
// absolute tolerance when abs_tol > 0.
void check_stat(const std::string& name, double got, double se, double ref,
                double floor_tol, double abs_tol, const std::string& note) {
  const double tol = abs_tol > 0.0 ? abs_tol : std::max(3.0 * se, floor_tol);
  record(name, std::fabs(got - ref) <= tol,
         fmt("got %.4f, reference %.4f, tolerance %.4f", got, ref, tol), note);
}

using NoteMap = std::map<std::string, std::string>;

void check_cell(const std::string& label, const MomentSummary& m,
                const Target& t, double mean_floor, double vm_floor,
                double abs_tol, const NoteMap& notes) {
  auto note = [&](const char* stat) {
    const auto it = notes.find(label + " " + stat);
    return it == notes.end() ? std::string() : it->second;
  };
  check_stat(label + " mean", m.mean, m.se_mean, t.mean, mean_floor, abs_tol,
             note("mean"));
  check_stat(label + " var", m.var, m.se_var, t.var, vm_floor, abs_tol,
             note("var"));
  check_stat(label + " mse", m.mse, m.se_mse, t.mse, vm_floor, abs_tol,
             note("mse"));
}

// ---------------------------------------------------------------------------
// criterion 1: exact structure of the hull, the fit and the switching relation

void criterion1() {
  const auto t0 = Clock::now();
  const DistributionSpec fams[3] = {DistributionSpec::exponential(),
                                    DistributionSpec::half_normal(),
                                    DistributionSpec::uniform01()};
  std::size_t majorant_bad = 0, concave_bad = 0, touch_bad = 0, mass_bad = 0;
  Rng pick(2026, 0);
  for (std::uint64_t t = 0; t < 300; ++t) {
    const std::size_t n =
        1 + static_cast<std::size_t>(pick.next_unit() * 200.0);
    Sample s = draw(fams[t % 3], n, 2026, t);
    if (t % 4 == 0) {
      std::vector<double> v = s.values;
      for (double& x : v) x = std::ceil(x * 16.0) / 16.0;
      s = ingest(std::move(v));
    }
    const auto verts = ecdf_vertices(s);
    const auto maj = lcm(verts);
    for (const auto& p : verts)
      if (maj.value_at(p.x) < p.y - 1e-12) ++majorant_bad;
    for (std::size_t i = 0; i + 2 < maj.knots.size(); ++i)
      if (!(cross(maj.knots[i], maj.knots[i + 1], maj.knots[i + 2]) < 0.0L))
        ++concave_bad;
    for (const auto& k : maj.knots) {
      bool touches = false;
      for (const auto& p : verts)
        if (p.x == k.x && p.y == k.y) {
          touches = true;
          break;
        }
      if (!touches) ++touch_bad;
    }
    if (std::fabs(grenander(s).mass() - 1.0) > 1e-12) ++mass_bad;
  }
  record("hull majorizes the empirical cdf", majorant_bad == 0,
         fmt("%zu violations over 300 fits", majorant_bad));
  record("hull slopes strictly decrease", concave_bad == 0,
         fmt("%zu violations", concave_bad));
  record("hull knots touch the empirical cdf", touch_bad == 0,
         fmt("%zu knots off the cdf", touch_bad));
  record("fitted densities have unit mass", mass_bad == 0,
         fmt("%zu fits off by more than 1e-12", mass_bad));

  std::size_t sw_bad = 0;
  Rng r(2027, 1);
  for (std::uint64_t t = 0; t < 10000; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(r.next_unit() * 199.0);
    const Sample s = draw(fams[t % 2], n, 2028, t);
    const StepDensity fit = grenander(s);
    const double u1 = r.next_unit(), u2 = r.next_unit();
    double a, x;
    // Near-tie stress: a and x land a relative 1e-9 off the fit's own levels
    // and jump points.  Exact coincidences stay out; the relation is an
    // almost sure equivalence and ties form its null set.
    if (t % 5 == 4) {
      const auto i = std::min(fit.heights.size() - 1,
                              static_cast<std::size_t>(u1 * fit.heights.size()));
      a = fit.heights[i] * (1.0 + (r.next_unit() < 0.5 ? 1e-9 : -1e-9));
    } else {
      a = 1e-3 - std::log1p(-u1) * 1.2;
    }
    if (t % 7 == 6) {
      const auto i = std::min(
          fit.breakpoints.size() - 1,
          static_cast<std::size_t>(u2 * fit.breakpoints.size()));
      x = std::max(0.0, fit.breakpoints[i] +
                            (r.next_unit() < 0.5 ? 1e-9 : -1e-9) *
                                (fit.breakpoints[i] + 1.0));
    } else {
      x = u2 * s.max() * 1.2;
    }
    if (!switching_check(s, a, x)) ++sw_bad;
  }
  record("switching relation", sw_bad == 0,
         fmt("%zu failures over 10000 (sample, a, x) triples", sw_bad));
  runtime_check("criterion 1 runtime", t0, 10.0);
}

// ---------------------------------------------------------------------------
// criterion 2: brute force oracles for both likelihood maximizers

double mean_loglik(const StepDensity& d, const Sample& s) {
  double ll = 0.0;
  for (double x : s.values) ll += std::log(eval(d, x));
  return ll / static_cast<double>(s.size());
}

// Best mean log likelihood over every nonincreasing step density whose
// breakpoints are a subset of the distinct order statistics, each block at
// its likelihood maximizing constant height.
double partition_oracle(const Sample& s) {
  std::vector<double> xs, cnt;
  for (double v : s.values) {
    if (xs.empty() || v != xs.back()) {
      xs.push_back(v);
      cnt.push_back(0.0);
    }
    cnt.back() += 1.0;
  }
  const std::size_t m = xs.size();
  const double n = static_cast<double>(s.size());
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t mask = 0; mask < (std::size_t{1} << (m - 1)); ++mask) {
    double prev_x = 0.0, block = 0.0, ll = 0.0;
    double prev_h = std::numeric_limits<double>::infinity();
    bool feasible = true;
    for (std::size_t j = 0; j < m; ++j) {
      block += cnt[j];
      if (j + 1 != m && !((mask >> j) & 1)) continue;
      const double h = block / n / (xs[j] - prev_x);
      if (h > prev_h + 1e-14) {
        feasible = false;
        break;
      }
      ll += block * std::log(h);
      prev_h = h;
      prev_x = xs[j];
      block = 0.0;
    }
    if (feasible) best = std::max(best, ll / n);
  }
  return best;
}

// Multiresolution grid search over per gap heights h_1 >= ... >= h_M with
// total mass <= 1, refining log spaced grids around the incumbent.
double penalized_oracle(const Sample& s, double alpha) {
  std::vector<double> xs, cnt;
  for (double v : s.values) {
    if (xs.empty() || v != xs.back()) {
      xs.push_back(v);
      cnt.push_back(0.0);
    }
    cnt.back() += 1.0;
  }
  const std::size_t m = xs.size();
  const double n = static_cast<double>(s.size());
  if (m > 5) throw std::invalid_argument("oracle limited to 5 distinct points");
  std::vector<double> wid(m), ub(m);
  for (std::size_t j = 0; j < m; ++j) {
    wid[j] = j == 0 ? xs[0] : xs[j] - xs[j - 1];
    ub[j] = 1.0 / xs[j];
  }
  std::vector<double> lo(m, 1e-4), hi(ub), h(m), best_h(m);
  double best = -std::numeric_limits<double>::infinity();
  std::function<void(std::size_t, double, double)> scan =
      [&](std::size_t j, double used, double ll) {
        if (j == m) {
          const double obj = ll / n - alpha * h[0];
          if (obj > best) {
            best = obj;
            best_h = h;
          }
          return;
        }
        const double top = std::min(hi[j], j == 0 ? hi[j] : h[j - 1]);
        const double bot = std::min(lo[j], top);
        const double rest = xs.back() - (j == 0 ? 0.0 : xs[j - 1]);
        const double h_flat = (1.0 - used) / rest;
        if (h_flat > 0.0 && h_flat <= top) {
          double ll2 = ll;
          for (std::size_t k = j; k < m; ++k) ll2 += cnt[k] * std::log(h_flat);
          const double obj = ll2 / n - alpha * (j == 0 ? h_flat : h[0]);
          if (obj > best) {
            best = obj;
            best_h = h;
            for (std::size_t k = j; k < m; ++k) best_h[k] = h_flat;
          }
        }
        const int pts = 13;
        for (int i = 0; i <= pts; ++i) {
          const double hv =
              i == pts
                  ? top
                  : bot * std::pow(top / bot, static_cast<double>(i) / pts);
          const double u = used + hv * wid[j];
          if (u > 1.0 + 1e-12) continue;
          h[j] = hv;
          scan(j + 1, u, ll + cnt[j] * std::log(hv));
        }
        const double h_sat = std::min((1.0 - used) / wid[j], top);
        if (h_sat > 0.0) {
          h[j] = h_sat;
          scan(j + 1, used + h_sat * wid[j],
               ll + cnt[j] * std::log(h_sat));
        }
      };
  const double shrink[] = {6.0, 3.0, 1.6, 1.25, 1.08, 1.02};
  for (double f : shrink) {
    scan(0, 0.0, 0.0);
    for (std::size_t j = 0; j < m; ++j) {
      lo[j] = best_h[j] / f;
      hi[j] = std::min(best_h[j] * f, ub[j]);
    }
  }
  return best;
}

void criterion2() {
  const auto t0 = Clock::now();
  Rng r(515, 99);
  double worst = 0.0;
  int trials = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (int t = 0; t < 30; ++t) {
      std::vector<double> v(n);
      for (double& x : v) {
        x = -std::log1p(-r.next_unit());
        if (t % 3 == 0) x = std::ceil(x * 8.0) / 8.0;
      }
      const Sample s = ingest(std::move(v));
      worst = std::max(
          worst, std::fabs(partition_oracle(s) - mean_loglik(grenander(s), s)));
      ++trials;
    }
  record("grenander matches the exhaustive partition maximizer", worst < 1e-3,
         fmt("largest objective gap %.2e over %d samples", worst, trials));

  double worstp = 0.0;
  int ptrials = 0;
  const int per_n[] = {0, 0, 10, 10, 8, 4};
  for (std::size_t n = 2; n <= 5; ++n)
    for (int t = 0; t < per_n[n]; ++t) {
      std::vector<double> v(n);
      for (double& x : v) x = -std::log1p(-r.next_unit());
      const Sample s = ingest(std::move(v));
      const double alpha = 0.02 * std::pow(40.0, r.next_unit());
      worstp = std::max(worstp, std::fabs(penalized_oracle(s, alpha) -
                                          penalized_fit(s, alpha).objective));
      ++ptrials;
    }
  record("penalized fit matches the grid search", worstp < 1e-3,
         fmt("largest objective gap %.2e over %d fits", worstp, ptrials));
  runtime_check("criterion 2 runtime", t0, 120.0);
}

// ---------------------------------------------------------------------------
// criteria 3 to 5: finite sample tables at 10^4 replications

struct MethodTargets {
  ZeroMethod method;
  Target t[4];
  bool absolute;  // flat 0.15 tolerance instead of max(3 se, floor)
};

void finite_table(const std::string& label, const DistributionSpec& spec,
                  double scale_exp, const std::vector<MethodTargets>& rows,
                  const NoteMap& notes) {
  ExperimentConfig cfg;
  cfg.spec = spec;
  cfg.sizes = {50, 100, 200, 10000};
  cfg.reps = 10000;
  cfg.methods.clear();
  for (const auto& r : rows) cfg.methods.push_back(r.method);
  cfg.scale_exponent = scale_exp;
  cfg.seed = 1;
  const ExperimentResult res = run_experiment(cfg);
  std::printf("config %016llx, seed %llu, reps %zu\n",
              static_cast<unsigned long long>(res.config_hash),
              static_cast<unsigned long long>(res.seed), res.reps);
  for (std::size_t mi = 0; mi < rows.size(); ++mi)
    for (std::size_t si = 0; si < 4; ++si) {
      const ExperimentCell& cell = res.cells[mi * 4 + si];
      check_cell(fmt("%s %s n=%zu", label.c_str(),
                     method_name(cell.method).c_str(), cell.n),
                 cell.stats, rows[mi].t[si], 0.05, 0.08,
                 rows[mi].absolute ? 0.15 : 0.0, notes);
    }
}

void criterion3() {
  const auto t0 = Clock::now();
  const std::string anomaly =
      "the n=50 reference (var 0.934, mse 1.478) exceeds its own n=100/200 "
      "values although the statistic rises with n; this rule reproduces the "
      "n=100, 200 and 10000 cells (the last within 0.011), and bandwidth "
      "variants that lift n=50 break those; see README reproduction notes";
  const std::string pen_mid =
      "systematic, not seed noise: across seeds 1 and 101 to 103 the "
      "variance sits near 1.41 (n=100) and 1.59 (n=200) with MC se about "
      "0.045, below the references 1.53 and 1.73, while the same pinned "
      "recipe reproduces the n=50 and n=10000 cells; see README "
      "reproduction notes";
  NoteMap notes = {
      {"exp adaptive n=50 mean", anomaly},
      {"exp adaptive n=50 var", anomaly},
      {"exp adaptive n=50 mse", anomaly},
      {"exp penalized n=100 var", pen_mid},
      {"exp penalized n=100 mse", pen_mid},
      {"exp penalized n=200 var", pen_mid},
      {"exp penalized n=200 mse", pen_mid},
  };
  finite_table(
      "exp", DistributionSpec::exponential(), 1.0 / 3.0,
      {{ZeroMethod::simple_k1,
        {{-0.847, 0.439, 1.157},
         {-0.853, 0.484, 1.211},
         {-0.868, 0.536, 1.289},
         {-0.917, 0.700, 1.541}},
        false},
       {ZeroMethod::adaptive_k1,
        {{-0.738, 0.934, 1.478},
         {-0.777, 0.742, 1.345},
         {-0.793, 0.807, 1.436},
         {-0.643, 1.045, 1.458}},
        false},
       {ZeroMethod::penalized,
        {{-0.072, 1.296, 1.301},
         {-0.079, 1.530, 1.537},
         {-0.075, 1.732, 1.738},
         {-0.195, 1.913, 1.951}},
        true}},
      notes);
  runtime_check("criterion 3 runtime", t0, 1800.0);
}

void criterion4() {
  const auto t0 = Clock::now();
  finite_table(
      "half-normal", DistributionSpec::half_normal(), 2.0 / 5.0,
      {{ZeroMethod::simple_k2,
        {{-0.429, 0.371, 0.555},
         {-0.437, 0.402, 0.592},
         {-0.440, 0.440, 0.634},
         {-0.419, 0.559, 0.735}},
        false},
       {ZeroMethod::adaptive_k2,
        {{-0.252, 0.459, 0.523},
         {-0.278, 0.502, 0.579},
         {-0.373, 0.549, 0.688},
         {-0.326, 0.747, 0.853}},
        false}},
      {});
  runtime_check("criterion 4 runtime", t0, 1800.0);
}

void criterion5() {
  const auto t0 = Clock::now();
  const std::string anomaly =
      "the n=50 reference (mean 0.046, var 0.475) exceeds its own n=100/200 "
      "variance values; this rule reproduces the n=100, 200 and 10000 cells; "
      "see README reproduction notes";
  NoteMap notes = {
      {"half-normal adaptive n=50 mean", anomaly},
      {"half-normal adaptive n=50 var", anomaly},
      {"half-normal adaptive n=50 mse", anomaly},
  };
  finite_table(
      "half-normal", DistributionSpec::half_normal(), 1.0 / 3.0,
      {{ZeroMethod::simple_k1,
        {{0.012, 0.320, 0.320},
         {0.058, 0.317, 0.320},
         {0.104, 0.316, 0.327},
         {0.269, 0.296, 0.368}},
        false},
       {ZeroMethod::adaptive_k1,
        {{0.046, 0.475, 0.477},
         {0.073, 0.406, 0.412},
         {0.091, 0.383, 0.391},
         {0.204, 0.319, 0.361}},
        false},
       {ZeroMethod::penalized,
        {{0.331, 0.659, 0.768},
         {0.336, 0.742, 0.855},
         {0.338, 0.812, 0.926},
         {0.279, 0.714, 0.792}},
        true}},
      notes);
  runtime_check("criterion 5 runtime", t0, 1800.0);
}

// ---------------------------------------------------------------------------
// criterion 6: the limit table by Brownian Monte Carlo

const Table4Row& find_row(const std::vector<Table4Row>& rows,
                          const char* label) {
  for (const auto& r : rows)
    if (r.label == label) return r;
  throw std::runtime_error(std::string("missing row ") + label);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

void criterion6() {
  const auto t0 = Clock::now();
  const std::string trunc_note =
      "the reference pair (0.336, 0.316) matches a horizon 10 truncation of "
      "the driftless slope law, whose supporting chord crosses any fixed "
      "horizon with probability of order T^(-1/2); the flag rate bound "
      "(< 1e-4) forces horizon 25, where the law has converged to about "
      "(0.475, 0.173, 0.399); mse is truncation invariant and matches; see "
      "README reproduction notes";
  const std::string limit_mean_note =
      "the reference mean -0.885 lies above the reference finite sample "
      "sequence (-0.847 to -0.917 at n=10^4), which decreases in n; an "
      "independent windowed order-statistics oracle gives -0.9225(51) at "
      "n=10^6, -0.9187(81) at 10^7 and -0.9275(89) at 10^8, reproducing "
      "this simulation (-0.9233) rather than the reference; see README "
      "reproduction notes";
  NoteMap notes = {
      {"limit simple exp mean", limit_mean_note},
      {"limit simple exp mse", limit_mean_note},
      {"limit simple half-normal mean", trunc_note},
      {"limit simple half-normal var", trunc_note},
  };

  Table4Options opt;  // pinned defaults: reps 1e5, grid 10 x 5e-4, seed 34207
  const auto rows = table4(opt);
  const auto& simple = find_row(rows, "simple");
  const auto& adaptive = find_row(rows, "adaptive");
  const auto& penalized = find_row(rows, "penalized");
  const auto& simple2 = find_row(rows, "simple2");
  const auto& adaptive2 = find_row(rows, "adaptive2");

  check_cell("limit simple exp", simple.exponential.m, {-0.885, 0.805, 1.591},
             0.03, 0.06, 0.0, notes);
  check_cell("limit adaptive exp", adaptive.exponential.m,
             {-0.298, 1.043, 1.131}, 0.03, 0.06, 0.0, notes);
  check_cell("limit penalized exp", penalized.exponential.m,
             {-0.349, 1.096, 1.218}, 0.03, 0.06, 0.0, notes);
  check_cell("limit simple half-normal", simple.half_normal.m,
             {0.336, 0.316, 0.429}, 0.03, 0.06, 0.0, notes);
  check_cell("limit simple2 half-normal", simple2.half_normal.m,
             {-0.415, 0.670, 0.842}, 0.03, 0.06, 0.0, notes);
  check_cell("limit adaptive2 half-normal", adaptive2.half_normal.m,
             {-0.140, 0.718, 0.737}, 0.03, 0.06, 0.0, notes);

  const bool markers =
      simple2.exponential.degenerate_inf && adaptive2.exponential.degenerate_inf &&
      adaptive.half_normal.degenerate_zero &&
      penalized.half_normal.degenerate_zero && !simple.exponential.degenerate_inf &&
      !simple.half_normal.degenerate_zero && !adaptive.exponential.degenerate_inf &&
      !penalized.exponential.degenerate_inf && !simple2.half_normal.degenerate_zero &&
      !adaptive2.half_normal.degenerate_zero;
  record("degenerate markers sit exactly where expected", markers,
         "exp simple2/adaptive2 diverge, half-normal adaptive/penalized "
         "collapse to 0");

  std::size_t flagged = 0, attempted = 0;
  for (const auto& r : rows) {
    flagged += r.exponential.flagged + r.half_normal.flagged;
    attempted += 2 * opt.reps;
  }
  record("boundary flag rate below 1e-4",
         static_cast<double>(flagged) < 1e-4 * static_cast<double>(attempted),
         fmt("%zu flagged of %zu evaluations", flagged, attempted));

  {
    ExperimentConfig cfg;
    cfg.spec = DistributionSpec::exponential();
    cfg.sizes = {100, 10000};
    cfg.reps = 300;
    cfg.methods = {ZeroMethod::simple_k2, ZeroMethod::adaptive_k2};
    cfg.scale_exponent = 2.0 / 5.0;
    cfg.seed = 71;
    const ExperimentResult res = run_experiment(cfg);
    for (std::size_t mi = 0; mi < 2; ++mi) {
      const double small = res.cells[mi * 2].stats.mean;
      const double large = res.cells[mi * 2 + 1].stats.mean;
      record(fmt("exp %s row diverges with n",
                 method_name(cfg.methods[mi]).c_str()),
             large < small - 1.5,
             fmt("scaled mean %.2f at n=100 vs %.2f at n=10^4", small, large));
    }
  }
  {
    ExperimentConfig cfg;
    cfg.spec = DistributionSpec::half_normal();
    cfg.sizes = {10000, 100000};
    cfg.reps = 300;
    cfg.methods = {ZeroMethod::penalized};
    cfg.seed = 73;
    const ExperimentResult res = run_experiment(cfg);
    const auto& a = res.cells[0].stats;
    const auto& b = res.cells[1].stats;
    record("half-normal penalized row concentrates toward 0",
           b.var < 0.85 * a.var,
           fmt("scaled var %.3f at n=10^4 vs %.3f at n=10^5 (mse %.3f vs "
               "%.3f)",
               a.var, b.var, a.mse, b.mse));
  }
  {
    const DistributionSpec hn = DistributionSpec::half_normal();
    std::vector<double> b4, b6;
    for (std::uint64_t rep = 0; rep < 60; ++rep) {
      b4.push_back(adaptive_zero(draw(hn, 10000, 77, rep)).tuning->b_hat);
      b6.push_back(adaptive_zero(draw(hn, 1000000, 78, rep)).tuning->b_hat);
    }
    const double m4 = median(b4), m6 = median(b6);
    record("half-normal adaptive normalizer diverges", m6 > 1.25 * m4,
           fmt("median plug-in scale %.2f at n=10^4 vs %.2f at n=10^6; the "
               "scaled error itself shrinks at an n^(-2/27) pace, too slow "
               "to display directly",
               m4, m6));
  }
  runtime_check("criterion 6 runtime", t0, 1200.0);
}

// ---------------------------------------------------------------------------
// criterion 7: bandwidth constant and flatness of its objective

void criterion7() {
  for (int k = 1; k <= 2; ++k) {
    const CStarResult res = estimate_cstar(k, 100000, GridSpec{}, 1);
    record(fmt("c* for k=%d", k), std::fabs(res.c_star - 0.345) <= 0.02,
           fmt("estimate %.4f (reference 0.345 +/- 0.02)", res.c_star));
    double rise[2] = {0.0, 0.0};
    int side = 0;
    for (const double off : {-0.05, 0.05}) {
      const double c = res.c_star + off;
      std::size_t best = 0;
      for (std::size_t i = 1; i < res.grid_c.size(); ++i)
        if (std::fabs(res.grid_c[i] - c) < std::fabs(res.grid_c[best] - c))
          best = i;
      rise[side++] = (res.mean_square[best] - res.objective_at_cstar) /
                     res.objective_at_cstar;
    }
    const double worst_rel = std::max(rise[0], rise[1]);
    record(fmt("objective flat near c* for k=%d", k), worst_rel <= 0.02,
           fmt("relative rise %.2f%% at c* - 0.05, %.2f%% at c* + 0.05 "
               "(bound 2%%)",
               100.0 * rise[0], 100.0 * rise[1]),
           "the curve is genuinely flat close in (rise under 0.13% across "
           "c* +/- 0.01, with common random numbers across the whole grid) "
           "but at the +/- 0.05 probes it sits 2 to 4 percent above the "
           "minimum on at least one side for both k, so the 2% budget "
           "there is not attainable; see README reproduction notes");
  }
}

// ---------------------------------------------------------------------------
// criterion 8: distributional identities

void criterion8() {
  const GridSpec g{10.0, 5e-4};
  {
    LawParams p;
    p.at = 0.0;
    const auto a = simulate_law(LawKind::d_twosided, p, 100000, g, 801);
    LawParams q;
    q.k = 2;
    const auto b = simulate_law(LawKind::argmax_twosided, q, 100000, g, 802);
    std::vector<double> doubled = b.draws;
    for (double& v : doubled) v *= 2.0;
    const double ks = ks_two_sample(a.draws, doubled);
    record("two-sided slope at 0 matches doubled argmax", ks < 0.01,
           fmt("ks %.4f at 10^5 replications (bound 0.01)", ks));
  }
  {
    const auto a = simulate_dr_nodrift_far(100000, 811);
    const auto b = simulate_argmax_onesided_fine(100000, 812);
    std::vector<double> roots = b.draws;
    for (double& v : roots) v = std::sqrt(v);
    const double ks = ks_two_sample(a.draws, roots);
    record("driftless slope matches the argmax square root", ks < 0.01,
           fmt("ks %.4f at 10^5 replications (bound 0.01)", ks));
  }
  {
    const DistributionSpec ex = DistributionSpec::exponential();
    const double fx = std::exp(-1.0);
    const double scale = std::pow(4.0 * fx * fx, -1.0 / 3.0);
    std::vector<double> emp;
    emp.reserve(2000);
    for (std::uint64_t rep = 0; rep < 2000; ++rep) {
      const Sample s = draw(ex, 10000, 821, rep);
      emp.push_back(scale * std::cbrt(10000.0) * (eval(grenander(s), 1.0) - fx));
    }
    LawParams q;
    q.k = 2;
    const auto ref = simulate_law(LawKind::argmax_twosided, q, 20000, g, 822);
    const double ks = ks_two_sample(emp, ref.draws);
    record("interior point law at n=10^4", ks < 0.05,
           fmt("ks %.4f over 2000 replications (bound 0.05)", ks));
  }
}

// ---------------------------------------------------------------------------
// criterion 9: grid stability of the limit table

void criterion9() {
  const auto t0 = Clock::now();
  const std::string sup_note =
      "the draw is a supremum over grid points, so refining the grid "
      "enlarges the candidate set and shifts the statistic up by order "
      "sqrt(step); the horizon comparison is exact";
  const std::string argmax_note =
      "the location statistic re-optimizes over twice as many candidates; "
      "the induced systematic shift exceeds half a standard error at 10^5 "
      "replications";
  NoteMap notes = {
      {"half step: penalized exp mean", sup_note},
      {"half step: penalized exp var", sup_note},
      {"half step: penalized exp mse", sup_note},
      {"half step: simple half-normal mean", argmax_note},
      {"half step: simple half-normal var", argmax_note},
      {"half step: simple half-normal mse", argmax_note},
  };

  Table4Options base;
  const auto rb = table4(base);
  Table4Options dt = base;
  dt.variant = GridVariant::double_horizon;
  const auto rt = table4(dt);
  Table4Options hh = base;
  hh.variant = GridVariant::half_step;
  const auto rh = table4(hh);

  for (std::size_t i = 0; i < rb.size(); ++i) {
    const auto compare = [&](const char* fam, const Table4Cell& b,
                             const Table4Cell& t2, const Table4Cell& h2) {
      if (b.degenerate_zero || b.degenerate_inf) return;
      const struct {
        const char* stat;
        double b, t, h, se;
      } stats[] = {
          {"mean", b.m.mean, t2.m.mean, h2.m.mean, b.m.se_mean},
          {"var", b.m.var, t2.m.var, h2.m.var, b.m.se_var},
          {"mse", b.m.mse, t2.m.mse, h2.m.mse, b.m.se_mse},
      };
      for (const auto& s : stats) {
        const double bound = 0.5 * s.se;
        const std::string cell =
            fmt("%s %s %s", rb[i].label.c_str(), fam, s.stat);
        record("double horizon: " + cell, std::fabs(s.t - s.b) < bound,
               fmt("shift %+.5f (bound %.5f)", s.t - s.b, bound));
        const auto it = notes.find("half step: " + cell);
        record("half step: " + cell, std::fabs(s.h - s.b) < bound,
               fmt("shift %+.5f (bound %.5f)", s.h - s.b, bound),
               it == notes.end() ? std::string() : it->second);
      }
    };
    compare("exp", rb[i].exponential, rt[i].exponential, rh[i].exponential);
    compare("half-normal", rb[i].half_normal, rt[i].half_normal,
            rh[i].half_normal);
  }
  std::printf("criterion 9 runtime: %.0f s\n", elapsed_s(t0));
}

void run_criterion(int c) {
  std::printf("== criterion %d ==\n", c);
  switch (c) {
    case 1: criterion1(); break;
    case 2: criterion2(); break;
    case 3: criterion3(); break;
    case 4: criterion4(); break;
    case 5: criterion5(); break;
    case 6: criterion6(); break;
    case 7: criterion7(); break;
    case 8: criterion8(); break;
    case 9: criterion9(); break;
    default: throw std::invalid_argument("criterion must be 1..9");
  }
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::strcmp(argv[i], "--criterion") == 0) criterion = std::atoi(argv[i + 1]);
  try {
    if (criterion == 0)
      for (int c = 1; c <= 9; ++c) run_criterion(c);
    else
      run_criterion(criterion);
  } catch (const std::exception& e) {
    std::printf("[FAIL] unexpected error: %s\n", e.what());
    ++g_failures;
  }
  if (g_failures == 0) {
    std::printf("all subchecks passed\n");
    return 0;
  }
  std::printf("%d subcheck(s) failed\n", g_failures);
  return 1;
}
