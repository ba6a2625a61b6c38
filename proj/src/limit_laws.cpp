#include "monodens/limit_laws.hpp"

#include "monodens/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace monodens {

namespace {

double factorial(int m) {
  double f = 1.0;
  for (int i = 2; i <= m; ++i) f *= i;
  return f;
}

void check_drift_power(int p) {
  if (p < 1 || p > 3)
    throw std::invalid_argument("drift exponent outside {1,2,3}");
}

double drift_term(double t, int p) {
  switch (p) {
    case 1: return t;
    case 2: return t * t;
    case 3: return t * t * t;
    default: return 0.0;
  }
}

// Upper-hull knot indices of the points (i, z[i]); the long double cross on
// index deltas keeps collinearity decisions exact for grid abscissas.
void grid_hull(const std::vector<double>& z, std::vector<std::int64_t>& k) {
  k.clear();
  const std::int64_t n = static_cast<std::int64_t>(z.size());
  for (std::int64_t i = 0; i < n; ++i) {
    while (k.size() >= 2) {
      const std::int64_t a = k[k.size() - 2];
      const std::int64_t b = k[k.size() - 1];
      const long double cr =
          static_cast<long double>(b - a) * (z[i] - z[a]) -
          static_cast<long double>(z[b] - z[a]) * (i - a);
      if (cr >= 0.0L)
        k.pop_back();
      else
        break;
    }
    k.push_back(i);
  }
}

struct Segment {
  std::int64_t left;
  std::int64_t right;
};

// Hull segment holding index `at` on its right side: left <= at < right,
// or the final segment when `at` is the last knot.
Segment segment_at(const std::vector<std::int64_t>& k, std::int64_t at) {
  auto it = std::upper_bound(k.begin(), k.end(), at);
  if (it == k.end()) --it;
  if (it == k.begin()) ++it;
  return {*(it - 1), *it};
}

std::int64_t snap_up(double x, double h, std::int64_t max_idx) {
  const double r = x / h;
  std::int64_t i = static_cast<std::int64_t>(std::ceil(r - 1e-9));
  if (i < 0) i = 0;
  if (i > max_idx) i = max_idx;
  return i;
}

struct Workspace {
  std::vector<double> z;
  std::vector<std::int64_t> knots;
};

SlopeResult dr_impl(const BrownianPath& path, int k, double at,
                    Workspace& ws) {
  if (k != 0) check_drift_power(k + 1);
  if (!(at >= 0.0) || !(at <= path.horizon))
    throw std::invalid_argument("slope point outside [0, horizon]");
  const std::size_t n = path.pos.size();
  ws.z.resize(n);
  const double h = path.step;
  if (k == 0) {
    ws.z = path.pos;
  } else {
    for (std::size_t i = 0; i < n; ++i)
      ws.z[i] = path.pos[i] - drift_term(static_cast<double>(i) * h, k + 1);
  }
  grid_hull(ws.z, ws.knots);
  const std::int64_t ai = snap_up(at, h, static_cast<std::int64_t>(n) - 1);
  const Segment seg = segment_at(ws.knots, ai);
  SlopeResult out;
  out.value = (ws.z[seg.right] - ws.z[seg.left]) /
              (static_cast<double>(seg.right - seg.left) * h);
  const double chord_end = static_cast<double>(seg.right) * h;
  out.boundary_flag = chord_end > 0.9 * path.horizon;
  if (k == 0 && out.value <= 0.0) out.boundary_flag = true;
  return out;
}

SlopeResult d_twosided_impl(const BrownianPath& path, double at,
                            Workspace& ws) {
  if (!path.two_sided())
    throw std::invalid_argument("two-sided functional needs a two-sided path");
  const std::int64_t nsteps = static_cast<std::int64_t>(path.neg.size());
  const std::int64_t total = 2 * nsteps + 1;
  const double h = path.step;
  ws.z.resize(static_cast<std::size_t>(total));
  for (std::int64_t i = 0; i < total; ++i) {
    const double t = static_cast<double>(i - nsteps) * h;
    const double w = i < nsteps ? path.neg[static_cast<std::size_t>(
                                      nsteps - 1 - i)]
                                : (i == nsteps ? 0.0
                                               : path.pos[static_cast<
                                                     std::size_t>(i - nsteps)]);
    ws.z[static_cast<std::size_t>(i)] = w - t * t;
  }
  grid_hull(ws.z, ws.knots);
  if (!(at >= -path.horizon) || !(at <= path.horizon))
    throw std::invalid_argument("slope point outside the grid");
  const std::int64_t ai = snap_up(at + path.horizon, h, total - 1);
  const Segment seg = segment_at(ws.knots, ai);
  SlopeResult out;
  out.value = (ws.z[seg.right] - ws.z[seg.left]) /
              (static_cast<double>(seg.right - seg.left) * h);
  const double lo = static_cast<double>(seg.left - nsteps) * h;
  const double hi = static_cast<double>(seg.right - nsteps) * h;
  out.boundary_flag =
      hi > 0.9 * path.horizon || lo < -0.9 * path.horizon;
  return out;
}

}  // namespace

LimitConstants constants(double f_end, double fk_end, int k, double c,
                         Endpoint endpoint) {
  if (!(f_end > 0.0)) throw std::invalid_argument("f at the endpoint must be > 0");
  if (!(c > 0.0)) throw std::invalid_argument("c must be > 0");
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (fk_end == 0.0)
    throw std::invalid_argument("k-th derivative must be nonzero");
  LimitConstants lc;
  lc.k = k;
  lc.c = c;
  lc.f_end = f_end;
  lc.fk_end = fk_end;
  lc.endpoint = endpoint;
  lc.a1 = std::sqrt(c / f_end);
  const double fact = factorial(k + 1);
  const double absfk = std::fabs(fk_end);
  if (endpoint == Endpoint::zero) {
    lc.b2k = std::pow(std::sqrt(f_end) / absfk * fact, 2.0 / (2 * k + 1));
    lc.a3k = std::pow(2.0 * factorial(k - 1), 1.0 / 3.0) *
             std::pow(std::fabs(f_end * fk_end) * std::pow(c, k - 1),
                      -1.0 / 3.0);
  } else {
    lc.b2k = std::pow(std::sqrt(f_end) / absfk * fact * fact,
                      1.0 / (2 * k + 1));
    lc.a3k = std::pow(factorial(k - 1), 1.0 / 3.0) *
             std::pow(4.0 * std::fabs(f_end * fk_end) * std::pow(c, k - 1),
                      -1.0 / 3.0);
  }
  lc.a2k = std::sqrt(lc.b2k / f_end);
  return lc;
}

SlopeResult dr_functional(const BrownianPath& path, int k, double at) {
  Workspace ws;
  return dr_impl(path, k, at, ws);
}

SlopeResult d_functional_twosided(const BrownianPath& path, double at) {
  Workspace ws;
  return d_twosided_impl(path, at, ws);
}

SlopeResult argmax_functional(const BrownianPath& path, int drift_power) {
  check_drift_power(drift_power);
  const double h = path.step;
  double best = -std::numeric_limits<double>::infinity();
  double loc = 0.0;
  if (path.two_sided()) {
    for (std::size_t j = path.neg.size(); j-- > 0;) {
      const double t = -static_cast<double>(j + 1) * h;
      const double v = path.neg[j] - drift_term(-t, drift_power);
      if (v >= best) {
        best = v;
        loc = t;
      }
    }
    if (0.0 >= best) {
      best = 0.0;
      loc = 0.0;
    }
    for (std::size_t i = 1; i < path.pos.size(); ++i) {
      const double t = static_cast<double>(i) * h;
      const double v = path.pos[i] - drift_term(t, drift_power);
      if (v >= best) {
        best = v;
        loc = t;
      }
    }
  } else {
    for (std::size_t i = 0; i < path.pos.size(); ++i) {
      const double t = static_cast<double>(i) * h;
      const double v = path.pos[i] - drift_term(t, drift_power);
      if (v >= best) {
        best = v;
        loc = t;
      }
    }
  }
  return {loc, std::fabs(loc) > 0.9 * path.horizon};
}

double sup_penalized_functional(const BrownianPath& path, double cpen,
                                double f0, double fprime0) {
  const double h = path.step;
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < path.pos.size(); ++i) {
    const double t = static_cast<double>(i) * h;
    const double v = (path.pos[i] - cpen + 0.5 * f0 * fprime0 * t * t) / t;
    if (v > best) best = v;
  }
  return best;
}

FunctionalSample simulate_law(LawKind law, const LawParams& params,
                              std::size_t reps, const GridSpec& grid,
                              std::uint64_t seed) {
  if (reps == 0) throw std::invalid_argument("reps must be positive");
  FunctionalSample fs;
  fs.law = law;
  fs.params = params;
  fs.grid = grid;
  fs.attempted = reps;
  fs.draws.reserve(reps);
  Workspace ws;
  const bool two_sided =
      law == LawKind::d_twosided || law == LawKind::argmax_twosided;
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const BrownianPath path =
        simulate_path(grid.horizon, grid.step, two_sided, seed, rep);
    SlopeResult r{0.0, false};
    switch (law) {
      case LawKind::dr_nodrift:
        r = dr_impl(path, 0, params.at, ws);
        break;
      case LawKind::dr_drift:
        r = dr_impl(path, params.k, params.at, ws);
        break;
      case LawKind::d_twosided:
        r = d_twosided_impl(path, params.at, ws);
        break;
      case LawKind::argmax_onesided:
      case LawKind::argmax_twosided:
        r = argmax_functional(path, params.k);
        break;
      case LawKind::sup_penalized:
        r.value = sup_penalized_functional(path, params.cpen, params.f0,
                                           params.fprime0);
        break;
    }
    if (r.boundary_flag)
      ++fs.flagged;
    else
      fs.draws.push_back(r.value);
  }
  return fs;
}

FunctionalSample simulate_dr_nodrift_far(std::size_t reps,
                                         std::uint64_t seed) {
  if (reps == 0) throw std::invalid_argument("reps must be positive");
  struct Band {
    double upto;
    double step;
  };
  const Band bands[4] = {
      {10.0, 5e-4}, {100.0, 0.05}, {1e4, 1.0}, {1e6, 25.0}};
  std::vector<double> ts{0.0};
  for (const Band& b : bands) {
    double t = ts.back();
    const std::size_t m =
        static_cast<std::size_t>(std::llround((b.upto - t) / b.step));
    for (std::size_t i = 1; i <= m; ++i) ts.push_back(t + b.step * i);
  }
  const std::size_t npts = ts.size();
  std::vector<double> sds(npts, 0.0);
  for (std::size_t i = 1; i < npts; ++i) sds[i] = std::sqrt(ts[i] - ts[i - 1]);

  FunctionalSample fs;
  fs.law = LawKind::dr_nodrift;
  fs.params.at = 1.0;
  fs.grid = {bands[3].upto, bands[0].step};
  fs.attempted = reps;
  fs.draws.reserve(reps);

  std::vector<double> z(npts);
  std::vector<std::size_t> knots;
  const std::size_t at_idx = static_cast<std::size_t>(
      std::llround(1.0 / bands[0].step));
  for (std::size_t rep = 0; rep < reps; ++rep) {
    Rng rng(seed, rep);
    z[0] = 0.0;
    for (std::size_t i = 1; i < npts; ++i)
      z[i] = z[i - 1] + sds[i] * rng.next_normal();
    knots.clear();
    for (std::size_t i = 0; i < npts; ++i) {
      while (knots.size() >= 2) {
        const std::size_t a = knots[knots.size() - 2];
        const std::size_t b = knots[knots.size() - 1];
        const long double cr =
            static_cast<long double>(ts[b] - ts[a]) * (z[i] - z[a]) -
            static_cast<long double>(z[b] - z[a]) * (ts[i] - ts[a]);
        if (cr >= 0.0L)
          knots.pop_back();
        else
          break;
      }
      knots.push_back(i);
    }
    auto it = std::upper_bound(knots.begin(), knots.end(), at_idx);
    if (it == knots.end()) --it;
    if (it == knots.begin()) ++it;
    const std::size_t l = *(it - 1);
    const std::size_t r = *it;
    const double slope = (z[r] - z[l]) / (ts[r] - ts[l]);
    if (ts[r] > 0.9 * bands[3].upto || slope <= 0.0)
      ++fs.flagged;
    else
      fs.draws.push_back(slope);
  }
  return fs;
}

FunctionalSample simulate_argmax_onesided_fine(std::size_t reps,
                                               std::uint64_t seed) {
  if (reps == 0) throw std::invalid_argument("reps must be positive");
  struct Band {
    double upto;
    double step;
  };
  const Band bands[4] = {
      {1e-3, 1e-6}, {0.1, 1e-5}, {2.0, 1e-4}, {30.0, 5e-4}};
  std::vector<double> ts{0.0};
  for (const Band& b : bands) {
    double t = ts.back();
    const std::size_t m =
        static_cast<std::size_t>(std::llround((b.upto - t) / b.step));
    for (std::size_t i = 1; i <= m; ++i) ts.push_back(t + b.step * i);
  }
  const std::size_t npts = ts.size();
  std::vector<double> sds(npts, 0.0);
  for (std::size_t i = 1; i < npts; ++i) sds[i] = std::sqrt(ts[i] - ts[i - 1]);

  FunctionalSample fs;
  fs.law = LawKind::argmax_onesided;
  fs.params.k = 1;
  fs.grid = {bands[3].upto, bands[0].step};
  fs.attempted = reps;
  fs.draws.reserve(reps);

  for (std::size_t rep = 0; rep < reps; ++rep) {
    Rng rng(seed, rep);
    double w = 0.0;
    double best = 0.0;
    double loc = 0.0;
    for (std::size_t i = 1; i < npts; ++i) {
      w += sds[i] * rng.next_normal();
      const double v = w - ts[i];
      if (v >= best) {
        best = v;
        loc = ts[i];
      }
    }
    if (loc > 0.9 * bands[3].upto)
      ++fs.flagged;
    else
      fs.draws.push_back(loc);
  }
  return fs;
}

MomentSummary limit_moments(const FunctionalSample& fs, double scale_divisor) {
  if (!(scale_divisor != 0.0))
    throw std::invalid_argument("scale divisor must be nonzero");
  std::vector<double> scaled(fs.draws.size());
  for (std::size_t i = 0; i < scaled.size(); ++i)
    scaled[i] = fs.draws[i] / scale_divisor;
  return summarize(scaled);
}

CStarResult estimate_cstar(int k, std::size_t reps, const GridSpec& grid,
                           std::uint64_t seed, double c_lo, double c_hi,
                           double c_step) {
  if (k != 1 && k != 2) throw std::invalid_argument("k must be 1 or 2");
  if (reps < 100000)
    throw std::invalid_argument("c* estimation needs reps >= 1e5");
  if (!(c_lo > 0.0) || !(c_hi <= 2.0) || !(c_lo < c_hi) || !(c_step > 0.0))
    throw std::invalid_argument("c grid must sit inside (0, 2]");
  CStarResult res;
  res.reps = reps;
  const std::size_t m =
      static_cast<std::size_t>(std::floor((c_hi - c_lo) / c_step + 1.5));
  res.grid_c.resize(m);
  for (std::size_t j = 0; j < m; ++j) res.grid_c[j] = c_lo + c_step * j;
  res.mean_square.assign(m, 0.0);

  Workspace ws;
  const std::int64_t max_idx =
      static_cast<std::int64_t>(std::llround(grid.horizon / grid.step));
  std::vector<std::int64_t> snap(m);
  for (std::size_t j = 0; j < m; ++j)
    snap[j] = snap_up(res.grid_c[j], grid.step, max_idx);
  for (std::size_t rep = 0; rep < reps; ++rep) {
    const BrownianPath path =
        simulate_path(grid.horizon, grid.step, false, seed, rep);
    ws.z.resize(path.pos.size());
    for (std::size_t i = 0; i < path.pos.size(); ++i) {
      const double t = static_cast<double>(i) * grid.step;
      ws.z[i] = path.pos[i] - drift_term(t, k + 1);
    }
    grid_hull(ws.z, ws.knots);
    for (std::size_t j = 0; j < m; ++j) {
      const Segment seg = segment_at(ws.knots, snap[j]);
      const double slope =
          (ws.z[seg.right] - ws.z[seg.left]) /
          (static_cast<double>(seg.right - seg.left) * grid.step);
      res.mean_square[j] += slope * slope;
    }
  }
  for (double& v : res.mean_square) v /= static_cast<double>(reps);

  const std::size_t jmin =
      static_cast<std::size_t>(std::min_element(res.mean_square.begin(),
                                                res.mean_square.end()) -
                               res.mean_square.begin());
  if (jmin == 0 || jmin + 1 == m)
    throw std::runtime_error(
        "c* lies on the grid boundary; widen the c grid");
  // Quadratic refinement through the minimum and its neighbours.
  const double y0 = res.mean_square[jmin - 1];
  const double y1 = res.mean_square[jmin];
  const double y2 = res.mean_square[jmin + 1];
  const double denom = y2 - 2.0 * y1 + y0;
  double offset = 0.0;
  if (denom > 0.0) offset = 0.5 * (y0 - y2) / denom;
  res.c_star = res.grid_c[jmin] + offset * c_step;
  res.objective_at_cstar =
      y1 - 0.125 * (y0 - y2) * (y0 - y2) / (denom > 0.0 ? denom : 1.0);
  return res;
}

namespace {

struct LawScales {
  double b21_exp, a21_exp;     // exponential, k = 1
  double b22_hn, a22_hn;       // half-normal, k = 2
  double sqrt_f0_hn;           // the k = 1 no-drift law scale at half-normal
};

LawScales table_scales() {
  const double f0hn = 0.7978845608028654;
  LawScales s;
  const LimitConstants exp1 = constants(1.0, -1.0, 1, 1.0);
  s.b21_exp = exp1.b2k;
  s.a21_exp = exp1.a2k;
  const LimitConstants hn2 = constants(f0hn, -f0hn, 2, 1.0);
  s.b22_hn = hn2.b2k;
  s.a22_hn = hn2.a2k;
  s.sqrt_f0_hn = std::sqrt(f0hn);
  return s;
}

}  // namespace

std::vector<Table4Row> table4(const Table4Options& opt) {
  const LawScales sc = table_scales();
  const double cstar = 0.345;
  // Penalty constant of the adaptive-alpha limit at the exponential:
  // 0.649 * beta^{-1/3} with beta = 1/2.
  const double cpen = 0.649 * std::pow(0.5, -1.0 / 3.0);

  std::vector<double> d_exp_simple, d_exp_adapt, d_exp_pen;
  std::vector<double> d_hn_simple, d_hn_s2, d_hn_a2;
  d_exp_simple.reserve(opt.reps);
  d_exp_adapt.reserve(opt.reps);
  d_exp_pen.reserve(opt.reps);
  d_hn_simple.reserve(opt.reps);
  d_hn_s2.reserve(opt.reps);
  d_hn_a2.reserve(opt.reps);
  std::size_t fl_exp_simple = 0, fl_exp_adapt = 0, fl_hn_simple = 0,
              fl_hn_s2 = 0, fl_hn_a2 = 0;

  const auto prepare = [&](double horizon, std::uint64_t stream_base,
                           std::size_t rep) {
    BrownianPath p = simulate_path(horizon, opt.grid.step, false, opt.seed,
                                   stream_base | rep);
    if (opt.variant == GridVariant::double_horizon)
      p = extend_horizon(p, 2.0 * horizon, opt.seed, stream_base | rep);
    else if (opt.variant == GridVariant::half_step)
      p = refine_half(p, opt.seed, stream_base | rep);
    return p;
  };

  Workspace ws;
  constexpr std::uint64_t kDriftPass = std::uint64_t{1} << 40;
  constexpr std::uint64_t kNoDriftPass = std::uint64_t{2} << 40;

  for (std::size_t rep = 0; rep < opt.reps; ++rep) {
    const BrownianPath path = prepare(opt.grid.horizon, kDriftPass, rep);
    // k = 1 drift: slopes at the optimal and the plug-in bandwidth constants.
    {
      const SlopeResult s1 = dr_impl(path, 1, 1.0 / sc.b21_exp, ws);
      if (s1.boundary_flag)
        ++fl_exp_simple;
      else
        d_exp_simple.push_back(s1.value / sc.a21_exp);
      const Segment seg =
          segment_at(ws.knots, snap_up(cstar, path.step,
                                       static_cast<std::int64_t>(
                                           ws.z.size()) - 1));
      const double slope = (ws.z[seg.right] - ws.z[seg.left]) /
                           (static_cast<double>(seg.right - seg.left) *
                            path.step);
      if (static_cast<double>(seg.right) * path.step > 0.9 * path.horizon)
        ++fl_exp_adapt;
      else
        d_exp_adapt.push_back(slope / sc.a21_exp);
    }
    d_exp_pen.push_back(sup_penalized_functional(path, cpen, 1.0, -1.0));
    // k = 2 drift on the same paths.
    {
      const SlopeResult s1 = dr_impl(path, 2, 1.0 / sc.b22_hn, ws);
      if (s1.boundary_flag)
        ++fl_hn_s2;
      else
        d_hn_s2.push_back(s1.value / sc.a22_hn);
      const Segment seg =
          segment_at(ws.knots, snap_up(cstar, path.step,
                                       static_cast<std::int64_t>(
                                           ws.z.size()) - 1));
      const double slope = (ws.z[seg.right] - ws.z[seg.left]) /
                           (static_cast<double>(seg.right - seg.left) *
                            path.step);
      if (static_cast<double>(seg.right) * path.step > 0.9 * path.horizon)
        ++fl_hn_a2;
      else
        d_hn_a2.push_back(slope / sc.a22_hn);
    }
  }
  // The no-drift slope law is drawn through its argmax representation,
  // D_R[W](1) equal in law to sqrt(argmax{W(t) - t}); the direct hull slope
  // needs horizons growing like flag_rate^-2.
  for (std::size_t rep = 0; rep < opt.reps; ++rep) {
    const BrownianPath path = prepare(opt.nodrift_horizon, kNoDriftPass, rep);
    const SlopeResult s = argmax_functional(path, 1);
    if (s.boundary_flag)
      ++fl_hn_simple;
    else
      d_hn_simple.push_back(std::sqrt(s.value) * sc.sqrt_f0_hn);
  }

  const auto cell = [](std::vector<double>& draws, std::size_t flagged) {
    Table4Cell c;
    c.m = summarize(draws);
    c.flagged = flagged;
    return c;
  };
  Table4Cell zero_cell;
  zero_cell.degenerate_zero = true;
  Table4Cell inf_cell;
  inf_cell.degenerate_inf = true;

  std::vector<Table4Row> rows(5);
  rows[0] = {"simple", cell(d_exp_simple, fl_exp_simple),
             cell(d_hn_simple, fl_hn_simple)};
  rows[1] = {"adaptive", cell(d_exp_adapt, fl_exp_adapt), zero_cell};
  rows[2] = {"penalized", cell(d_exp_pen, 0), zero_cell};
  rows[3] = {"simple2", inf_cell, cell(d_hn_s2, fl_hn_s2)};
  rows[4] = {"adaptive2", inf_cell, cell(d_hn_a2, fl_hn_a2)};
  return rows;
}

std::string table4_csv(const std::vector<Table4Row>& rows) {
  std::ostringstream out;
  out.precision(10);
  out << "estimator,exp_mean,exp_var,exp_mse,hn_mean,hn_var,hn_mse\n";
  const auto put = [&](const Table4Cell& c) {
    if (c.degenerate_zero)
      out << "0,0,0";
    else if (c.degenerate_inf)
      out << "-inf,inf,inf";
    else
      out << c.m.mean << ',' << c.m.var << ',' << c.m.mse;
  };
  for (const Table4Row& r : rows) {
    out << r.label << ',';
    put(r.exponential);
    out << ',';
    put(r.half_normal);
    out << '\n';
  }
  return out.str();
}

}  // namespace monodens
