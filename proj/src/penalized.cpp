#include "monodens/penalized.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "monodens/grenander.hpp"

namespace monodens {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct Gaps {
  std::vector<double> xs;   // distinct order statistics
  std::vector<double> cnt;  // multiplicities
  std::vector<double> wid;  // xs[j] - xs[j-1], wid[0] = xs[0]
  double n = 0.0;
};

Gaps collapse(const Sample& s) {
  Gaps g;
  g.n = static_cast<double>(s.size());
  for (double v : s.values) {
    if (g.xs.empty() || v != g.xs.back()) {
      g.wid.push_back(g.xs.empty() ? v : v - g.xs.back());
      g.xs.push_back(v);
      g.cnt.push_back(0.0);
    }
    g.cnt.back() += 1.0;
  }
  return g;
}

struct Block {
  double cnt;
  double wid;
  double rate;  // cnt / wid, the unconstrained block level up to a multiplier
  std::size_t ngaps;
};

// Pool adjacent violators so block rates decrease along the tail gaps.
std::vector<Block> pooled_blocks(const Gaps& g) {
  std::vector<Block> st;
  for (std::size_t j = 1; j < g.xs.size(); ++j) {
    Block b{g.cnt[j], g.wid[j], g.cnt[j] / g.wid[j], 1};
    while (!st.empty() && st.back().rate <= b.rate) {
      b.cnt += st.back().cnt;
      b.wid += st.back().wid;
      b.rate = b.cnt / b.wid;
      b.ngaps += st.back().ngaps;
      st.pop_back();
    }
    st.push_back(b);
  }
  return st;
}

// Inner maximum of sum_j c_j log h_j over heights on the tail gaps subject
// to h <= v blockwise and total tail mass <= S.  Heights are the pooled
// rates clipped at v and scaled by a multiplier when the mass bound binds.
struct Inner {
  double loglik = 0.0;          // unnormalized sum over tail observations
  std::vector<double> levels;   // per pooled block
  bool feasible = false;
};

Inner inner_solve(const std::vector<Block>& blocks, double v, double s_mass) {
  Inner out;
  if (blocks.empty()) {
    out.feasible = s_mass >= -1e-15;
    return out;
  }
  if (!(s_mass > 0.0)) return out;  // tail observations need positive mass
  double cap_mass = 0.0;
  for (const Block& b : blocks) cap_mass += v * b.wid;
  out.levels.resize(blocks.size());
  if (cap_mass <= s_mass) {
    // Mass bound slack: every block pushes to the cap.
    double ll = 0.0;
    const double lv = std::log(v);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      out.levels[i] = v;
      ll += blocks[i].cnt * lv;
    }
    out.loglik = ll;
    out.feasible = true;
    return out;
  }
  // Mass bound active: levels are min(v, rate/mu) with mu chosen so the
  // tail mass is exactly s_mass.  Scan the number of capped leading blocks
  // for the consistent multiplier.
  const std::size_t nb = blocks.size();
  std::vector<double> pref_wid(nb + 1, 0.0), suf_cnt(nb + 1, 0.0);
  for (std::size_t i = 0; i < nb; ++i)
    pref_wid[i + 1] = pref_wid[i] + blocks[i].wid;
  for (std::size_t i = nb; i-- > 0;)
    suf_cnt[i] = suf_cnt[i + 1] + blocks[i].cnt;
  std::size_t best_j = nb + 1;
  double best_mu = 0.0, best_viol = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j <= nb; ++j) {
    const double budget = s_mass - v * pref_wid[j];
    if (j == nb) break;  // all capped was handled by the slack branch
    if (!(budget > 0.0)) break;
    const double mu = suf_cnt[j] / budget;
    // Capped prefix wants rate/mu >= v, uncapped suffix rate/mu <= v.
    const double hi = j > 0 ? blocks[j - 1].rate / mu - v : 0.0;
    const double lo = v - blocks[j].rate / mu;
    const double viol = std::max(0.0, -std::min(hi, lo));
    if (viol < best_viol) {
      best_viol = viol;
      best_j = j;
      best_mu = mu;
      if (viol == 0.0) break;
    }
  }
  if (best_j > nb) return out;
  double ll = 0.0;
  for (std::size_t i = 0; i < nb; ++i) {
    const double lvl = i < best_j ? v : blocks[i].rate / best_mu;
    out.levels[i] = std::min(lvl, v);
    ll += blocks[i].cnt * std::log(out.levels[i]);
  }
  out.loglik = ll;
  out.feasible = true;
  return out;
}

// Profile objective at head level v (times n, before the alpha term).
double profile(const Gaps& g, const std::vector<Block>& blocks, double v,
               double alpha) {
  if (!(v > 0.0)) return kNegInf;
  const double s_mass = 1.0 - v * g.wid[0];
  const Inner in = inner_solve(blocks, v, s_mass);
  if (!in.feasible) return kNegInf;
  return (g.cnt[0] * std::log(v) + in.loglik) / g.n - alpha * v;
}

}  // namespace

PenalizedFit penalized_fit(const Sample& s, double alpha) {
  if (!(alpha >= 0.0)) throw std::invalid_argument("alpha must be >= 0");
  if (!(s.size() >= 1 && s.min() > 0.0))
    throw std::invalid_argument("penalized fit needs positive observations");
  const Gaps g = collapse(s);
  const std::vector<Block> blocks = pooled_blocks(g);
  const StepDensity gren = grenander(s);

  // Bracket the head level.  The log term repels 0, and v has the hard
  // feasibility bound 1/x_(1); for a huge penalty the optimum sits near
  // cnt0/(n alpha), so widen downward adaptively.
  const double v_max = 1.0 / g.wid[0];
  double hi = std::min(10.0 * gren.heights.front(), v_max);
  double lo = std::min(gren.heights.back(), hi) / 10.0;
  if (alpha > 0.0) lo = std::min(lo, g.cnt[0] / (g.n * alpha) / 10.0);

  const auto obj = [&](double lv) {  // objective in log v
    return profile(g, blocks, std::exp(lv), alpha);
  };

  double u_lo = std::log(lo), u_hi = std::log(hi);
  double best_u = u_hi, best_f = kNegInf;
  for (int expand = 0; expand < 8; ++expand) {
    // Golden-section over the concave profile.
    constexpr double kInvPhi = 0.6180339887498949;
    double a = u_lo, b = u_hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = obj(c), fd = obj(d);
    while (b - a > 1e-11) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = obj(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = obj(d);
      }
    }
    best_u = fc >= fd ? c : d;
    best_f = std::max(fc, fd);
    // Endpoints can hold the optimum when the profile is monotone on the
    // bracket (a one-point sample against a weak penalty, say).
    if (obj(u_hi) > best_f) {
      best_u = u_hi;
      best_f = obj(u_hi);
    }
    if (obj(u_lo) > best_f) {
      best_u = u_lo;
      best_f = obj(u_lo);
    }
    const bool at_lo = best_u < u_lo + 1e-9;
    const bool at_hi = best_u > u_hi - 1e-9;
    if (at_lo) {
      u_lo -= std::log(1e3);
    } else if (at_hi && hi < v_max) {
      hi = std::min(hi * 10.0, v_max);
      u_hi = std::log(hi);
    } else {
      break;
    }
  }

  const double v = std::exp(best_u);
  const double s_mass = 1.0 - v * g.wid[0];
  const Inner in = inner_solve(blocks, v, std::max(s_mass, 0.0));
  if (!in.feasible) throw std::logic_error("penalized fit: infeasible optimum");

  PenalizedFit fit;
  fit.alpha = alpha;
  fit.objective = best_f;
  // Assemble the step density: head level v, then block levels, merging
  // equal neighbours; leftover mass extends the last step past x_(M).
  std::vector<double> bps{0.0};
  std::vector<double> hs{v};
  double used = v * g.xs[0];
  std::size_t idx = 0;  // distinct index of the current step boundary
  for (std::size_t i = 0; i < in.levels.size(); ++i) {
    const double left = g.xs[idx];
    idx += blocks[i].ngaps;
    used += in.levels[i] * (g.xs[idx] - left);
    // Merge levels within rounding noise of the previous step, so a cap
    // tie resolved at the solver tolerance does not leave a bogus jump.
    if (in.levels[i] < hs.back() * (1.0 - 1e-9)) {
      bps.push_back(left);
      hs.push_back(in.levels[i]);
    }
  }
  // Close the last step at x_(M), then extend for any unused mass.
  const double slack = 1.0 - used;
  double end = g.xs.back();
  if (slack > 1e-14) end += slack / hs.back();
  bps.push_back(end);

  fit.density.breakpoints = std::move(bps);
  fit.density.heights = std::move(hs);
  validate(fit.density);
  if (fit.density.heights.size() >= 2)
    fit.x_m = fit.density.breakpoints[2];
  return fit;
}

AlphaRecipe alpha_recipe(const Sample& s, double alpha0, double q) {
  if (!(alpha0 > 0.0)) throw std::invalid_argument("alpha0 must be > 0");
  if (!(q > 0.0)) throw std::invalid_argument("q must be > 0");
  const PenalizedFit pilot = penalized_fit(s, alpha0);
  const double n = static_cast<double>(s.size());
  const double floor_val = std::pow(n, -q);
  AlphaRecipe r;
  r.alpha0 = alpha0;
  r.q = q;
  r.x_m = pilot.x_m;
  if (pilot.x_m) {
    const double v0 = pilot.density.heights.front();
    // Level just past x_m, so the numerator spans both pilot jumps; 0 when
    // x_m ends the support.
    const double fxm = eval(pilot.density,
                            std::nextafter(*pilot.x_m,
                                           std::numeric_limits<double>::max()));
    r.beta_hat = std::max(v0 * (v0 - fxm) / (2.0 * *pilot.x_m), floor_val);
  } else {
    r.beta_hat = floor_val;
    r.x_m_fallback = true;
  }
  r.alpha_hat = 0.649 * std::pow(r.beta_hat, -1.0 / 3.0) * std::pow(n, -2.0 / 3.0);
  return r;
}

PenalizedZero penalized_zero_full(const Sample& s, double alpha0, double q) {
  PenalizedZero out;
  out.recipe = alpha_recipe(s, alpha0, q);
  out.fit = penalized_fit(s, out.recipe.alpha_hat);
  out.estimate = {out.fit.density.heights.front(), ZeroMethod::penalized,
                  std::nullopt};
  return out;
}

ZeroEstimate penalized_zero(const Sample& s, double alpha0, double q) {
  return penalized_zero_full(s, alpha0, q).estimate;
}

double default_pilot_alpha(std::size_t n) {
  if (n < 2) throw std::invalid_argument("pilot penalty needs n >= 2");
  struct Anchor {
    double n;
    double a;
  };
  const double c_inf = 0.649 * std::pow(0.5, -1.0 / 3.0);
  const Anchor anchors[] = {{50.0, 0.0516},
                            {100.0, 0.0325},
                            {200.0, 0.0205},
                            {1000.0, c_inf * std::pow(1000.0, -2.0 / 3.0)}};
  const double dn = static_cast<double>(n);
  if (dn >= 1000.0) return c_inf * std::pow(dn, -2.0 / 3.0);
  if (dn <= 50.0) return 0.0516 * std::pow(dn / 50.0, -2.0 / 3.0);
  for (int i = 0; i < 3; ++i) {
    if (dn <= anchors[i + 1].n) {
      const double t = (std::log(dn) - std::log(anchors[i].n)) /
                       (std::log(anchors[i + 1].n) - std::log(anchors[i].n));
      return std::exp((1.0 - t) * std::log(anchors[i].a) +
                      t * std::log(anchors[i + 1].a));
    }
  }
  return c_inf * std::pow(dn, -2.0 / 3.0);
}

}  // namespace monodens
