#include "wdro/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "wdro/kernels.hpp"
#include "wdro/optim1d.hpp"
#include "wdro/rng.hpp"

namespace wdro {
namespace {

inline double sgn(double x) { return x >= 0.0 ? 1.0 : -1.0; }

double weighted_norm(const std::vector<double>& w, const std::vector<double>& v, WOrder p) {
  if (p.infinite) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  const double s = kernels::tshinge_pow_wsum(w.data(), v.data(), 0.0, 0.0, p.p, v.size());
  return std::pow(s, 1.0 / p.p);
}

// Radial scaling onto the feasible ball (exact projection for a norm ball).
void project_feasible(const std::vector<double>& w, std::vector<double>& v, WOrder p, double eps) {
  const double nv = weighted_norm(w, v, p);
  if (nv > eps) {
    const double f = eps > 0.0 ? eps / nv : 0.0;
    for (double& x : v) x *= f;
  }
}

// --- candidate family (a): analytic maximizers ------------------------------

// Worst-case perturbation direction for a loss form, as lifted from the
// attainment cases of the closed-form proofs.
void loss_directions(const LossSpec& loss, const std::vector<double>& z,
                     std::vector<std::vector<double>>& out) {
  const std::size_t n = z.size();
  const LossSpec* base = &loss;
  if (const auto* p = std::get_if<PowerLoss>(&loss.v())) base = p->base.get();

  std::vector<double> d(n, 0.0);
  if (const auto* l = std::get_if<LinearLoss>(&base->v())) {
    std::fill(d.begin(), d.end(), sgn(l->slope));
  } else if (const auto* l = std::get_if<AbsoluteLoss>(&base->v())) {
    for (std::size_t i = 0; i < n; ++i) d[i] = sgn(z[i] - l->center);
  } else if (const auto* l = std::get_if<HingePosLoss>(&base->v())) {
    for (std::size_t i = 0; i < n; ++i) d[i] = std::max(z[i] - l->m, 0.0);
  } else if (const auto* l = std::get_if<HingeNegLoss>(&base->v())) {
    for (std::size_t i = 0; i < n; ++i) d[i] = -std::max(l->m - z[i], 0.0);
  } else if (const auto* l = std::get_if<TwoSidedHingeLoss>(&base->v())) {
    for (std::size_t i = 0; i < n; ++i)
      d[i] = std::max(std::abs(z[i] - l->m1) - l->m2, 0.0) * sgn(z[i] - l->m1);
  } else if (const auto* l = std::get_if<ShiftedAbsLoss>(&base->v())) {
    for (std::size_t i = 0; i < n; ++i) d[i] = (std::abs(z[i] - l->m) + l->b) * sgn(z[i] - l->m);
  } else if (std::holds_alternative<ExpNegLoss>(base->v())) {
    std::fill(d.begin(), d.end(), -1.0);
  } else {
    return;
  }
  out.push_back(std::move(d));
}

// x -> loss(x - t), folded back into the catalog (offsets absorb t).
LossSpec shifted_loss(const LossSpec& ell, double t) {
  const LossSpec* base = &ell;
  if (const auto* p = std::get_if<PowerLoss>(&ell.v())) base = p->base.get();
  if (const auto* l = std::get_if<HingePosLoss>(&base->v()))
    return LossSpec(HingePosLoss{l->m + t});
  if (const auto* l = std::get_if<HingeNegLoss>(&base->v()))
    return LossSpec(HingeNegLoss{l->m + t});
  if (const auto* l = std::get_if<TwoSidedHingeLoss>(&base->v()))
    return LossSpec(TwoSidedHingeLoss{l->m1 + t, l->m2});
  if (const auto* l = std::get_if<ShiftedAbsLoss>(&base->v()))
    return LossSpec(ShiftedAbsLoss{l->m + t, l->b});
  if (const auto* l = std::get_if<AbsoluteLoss>(&base->v()))
    return LossSpec(AbsoluteLoss{l->center + t, l->scale, l->intercept});
  return *base;
}

struct SlopeSegment {
  double mass;
  double atom;   // original atom value
  double sign;   // direction multiplier (sign of the atom for |.| ranks)
  double slope;  // effective distortion slope on this probability segment
};

// Refine the atom partition (ranked by |z| when rank_abs) against the knot
// partition of h; each probability segment carries the slope it sees.
std::vector<SlopeSegment> refine_segments(const Empirical1D& d, const DistortionSpec& h,
                                          double slope_shift, bool rank_abs) {
  const std::size_t n = d.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  if (rank_abs) {
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(d.atoms()[a]) < std::abs(d.atoms()[b]);
    });
  }

  std::vector<SlopeSegment> segs;
  const auto& knots = h.knots();
  const auto& slopes = h.slopes();
  double f_prev = 0.0;
  std::size_t knot = 0;
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = order[r];
    const double f_next = (r + 1 == n) ? 1.0 : f_prev + d.weights()[i];
    double lo = f_prev;
    while (lo < f_next - 1e-15) {
      while (knot + 1 < knots.size() && knots[knot + 1] <= lo + 1e-15) ++knot;
      const double hi = std::min(f_next, knot + 1 < knots.size() ? knots[knot + 1] : 1.0);
      if (hi <= lo) break;
      segs.push_back({hi - lo, d.atoms()[i], rank_abs ? sgn(d.atoms()[i]) : 1.0,
                      slopes[std::min(knot, slopes.size() - 1)] + slope_shift});
      lo = hi;
    }
    f_prev = f_next;
  }
  return segs;
}

// The attaining perturbation of the distortion result, built as a
// distribution because it may split atoms across knot boundaries:
// v = sign(g) * eps * |g|^{q/p} / ||g||_q^{q/p} at quantile level U.
std::optional<Empirical1D> distortion_split_candidate(const Empirical1D& d,
                                                      const DistortionSpec& h, double slope_shift,
                                                      bool rank_abs, WOrder p, double eps) {
  if (p.infinite || p.p == 1.0) return std::nullopt;  // shift / escape candidates cover these
  const WOrder q = p.conjugate();
  const double gq = h.slope_norm(q, slope_shift);
  if (!(gq > 0.0)) return std::nullopt;

  std::vector<double> atoms, weights;
  for (const auto& s : refine_segments(d, h, slope_shift, rank_abs)) {
    double v = 0.0;
    if (s.slope != 0.0)
      v = sgn(s.slope) * eps * std::pow(std::abs(s.slope) / gq, q.p / p.p);
    atoms.push_back(s.atom + s.sign * v);
    weights.push_back(s.mass);
  }
  return Empirical1D(std::move(atoms), std::move(weights));
}

// --- candidate family (b): the escaping sequence ----------------------------

// Carve mass delta off the top (or bottom) of the distribution and shift it
// by +shift (resp. -shift); the moved mass keeps the transport cost at
// delta^{1/p} * shift.
Empirical1D carve_shift(const Empirical1D& d, double delta, double shift, bool top) {
  std::vector<double> atoms = d.atoms();
  std::vector<double> weights = d.weights();
  std::vector<double> extra_atoms, extra_weights;
  double remaining = delta;
  auto take_at = [&](std::size_t k) {
    const double take = std::min(weights[k], remaining);
    if (take > 0.0) {
      weights[k] -= take;
      remaining -= take;
      extra_atoms.push_back(atoms[k] + (top ? shift : -shift));
      extra_weights.push_back(take);
    }
  };
  if (top) {
    for (std::size_t k = atoms.size(); k-- > 0 && remaining > 0.0;) take_at(k);
  } else {
    for (std::size_t k = 0; k < atoms.size() && remaining > 0.0; ++k) take_at(k);
  }

  std::vector<double> out_atoms, out_weights;
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    if (weights[k] > 0.0) {
      out_atoms.push_back(atoms[k]);
      out_weights.push_back(weights[k]);
    }
  }
  out_atoms.insert(out_atoms.end(), extra_atoms.begin(), extra_atoms.end());
  out_weights.insert(out_weights.end(), extra_weights.begin(), extra_weights.end());
  return Empirical1D(std::move(out_atoms), std::move(out_weights));
}

// --- candidate family (c): ascent --------------------------------------------

std::vector<double> numeric_gradient(const Empirical1D& proj, const RiskSpec& risk,
                                     const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<double> g(n, 0.0), probe = v;
  for (std::size_t i = 0; i < n; ++i) {
    const double h = 1e-6 * (1.0 + std::abs(v[i]));
    probe[i] = v[i] + h;
    const double up = eval_risk(proj.perturbed(probe), risk);
    probe[i] = v[i] - h;
    const double dn = eval_risk(proj.perturbed(probe), risk);
    probe[i] = v[i];
    g[i] = (up - dn) / (2.0 * h);
  }
  return g;
}

// argmax of <g,u> over the weighted p-ball of radius eps.
std::vector<double> linear_max_point(const std::vector<double>& w, const std::vector<double>& g,
                                     WOrder p, double eps) {
  const std::size_t n = g.size();
  std::vector<double> u(n, 0.0);
  if (p.infinite) {
    for (std::size_t i = 0; i < n; ++i) u[i] = sgn(g[i]) * eps;
    return u;
  }
  if (p.p == 1.0) {
    std::size_t best = 0;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = std::abs(g[i]) / w[i];
      if (r > best_ratio) {
        best_ratio = r;
        best = i;
      }
    }
    if (best_ratio > 0.0) u[best] = sgn(g[best]) * eps / w[best];
    return u;
  }
  const double expo = 1.0 / (p.p - 1.0);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (g[i] != 0.0) {
      u[i] = sgn(g[i]) * std::pow(std::abs(g[i]) / w[i], expo);
      any = true;
    }
  }
  if (!any) return u;
  const double nv = weighted_norm(w, u, p);
  if (nv > 0.0)
    for (double& x : u) x *= eps / nv;
  return u;
}

}  // namespace

SupResult sup_risk_numeric(const Empirical1D& proj, WOrder p, double eps_eff, const RiskSpec& risk,
                           const OracleConfig& cfg) {
  if (!(eps_eff >= 0.0)) throw std::invalid_argument("oracle: radius must be >= 0");
  const std::size_t n = proj.size();
  const auto& w = proj.weights();
  const auto& z = proj.atoms();

  SupResult best;
  best.value = eval_risk(proj, risk);
  best.argmax.assign(n, 0.0);
  best.family = "nominal";
  if (eps_eff == 0.0) return best;

  auto try_vector = [&](std::vector<double> v, const char* family) {
    project_feasible(w, v, p, eps_eff);
    double val;
    try {
      val = eval_risk(proj.perturbed(v), risk);
    } catch (const EvalError&) {
      return;
    }
    if (val > best.value) {
      best.value = val;
      best.argmax = std::move(v);
      best.family = family;
    }
  };
  auto try_dist = [&](const Empirical1D& d, const char* family) {
    double val;
    try {
      val = eval_risk(d, risk);
    } catch (const EvalError&) {
      return;
    }
    if (val > best.value) {
      best.value = val;
      best.argmax.clear();
      best.family = family;
    }
  };

  // family (a)
  std::vector<std::vector<double>> dirs;
  dirs.emplace_back(n, 1.0);
  dirs.emplace_back(n, -1.0);

  if (const auto* r = std::get_if<ExpectedLossRisk>(&risk)) {
    loss_directions(r->loss, z, dirs);
  } else if (const auto* r = std::get_if<CVaRRisk>(&risk)) {
    // fractional tail indicator at level alpha
    std::vector<double> d(n, 0.0);
    double cum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double f_lo = cum;
      cum += w[i];
      d[i] = std::max(std::min(cum, 1.0) - std::max(f_lo, r->alpha), 0.0) / w[i];
    }
    dirs.push_back(std::move(d));
  } else if (const auto* r = std::get_if<InfRepRisk>(&risk)) {
    const double t_hat = eval_inf_rep(proj, *r).minimizer;
    std::vector<double> u(z);
    if (r->abs_arg)
      for (double& x : u) x = std::abs(x);
    std::vector<std::vector<double>> base_dirs;
    loss_directions(shifted_loss(r->ell, t_hat), u, base_dirs);
    for (auto& d : base_dirs) {
      if (r->abs_arg)
        for (std::size_t i = 0; i < n; ++i) d[i] *= sgn(z[i]);
      dirs.push_back(std::move(d));
    }
  } else if (const auto* r = std::get_if<InfRepDev>(&risk)) {
    const double t_hat = eval_inf_rep(proj, *r).minimizer;
    loss_directions(shifted_loss(r->ell, t_hat), z, dirs);
  } else if (std::holds_alternative<VarianceRisk>(risk)) {
    const double mu = proj.mean();
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = z[i] - mu;
    dirs.push_back(std::move(d));
  }

  for (auto& d : dirs) {
    const double nd = weighted_norm(w, d, p);
    if (!(nd > 0.0)) continue;
    std::vector<double> v = d;
    for (double& x : v) x *= eps_eff / nd;
    try_vector(std::move(v), "analytic");
  }

  // distortion-style attaining candidates (may split atoms)
  {
    std::optional<Empirical1D> split;
    if (const auto* r = std::get_if<CVaRRisk>(&risk)) {
      split =
          distortion_split_candidate(proj, DistortionSpec::cvar(r->alpha), 0.0, false, p, eps_eff);
    } else if (const auto* r = std::get_if<CVaRDeviationRisk>(&risk)) {
      const DistortionSpec h = DistortionSpec::cvar(r->alpha);
      split = distortion_split_candidate(proj, h, h.h0() - h.h1(), false, p, eps_eff);
    } else if (const auto* r = std::get_if<DistortionRisk>(&risk)) {
      split = distortion_split_candidate(proj, r->h, 0.0, r->on_abs, p, eps_eff);
    } else if (const auto* r = std::get_if<DistortionDeviationRisk>(&risk)) {
      split = distortion_split_candidate(proj, r->h, r->h.h0() - r->h.h1(), false, p, eps_eff);
    }
    if (split) try_dist(*split, "analytic-split");
  }

  // family (b): escaping sequence, finite p only (the L-inf ball is bounded)
  if (!p.infinite) {
    const double lg = std::log(std::max(cfg.n_max, 2.0));
    const int points = std::max(cfg.escape_points, 2);
    for (int k = 0; k <= points; ++k) {
      const double nval = std::exp(lg * static_cast<double>(k) / points);
      const double delta = std::min(1.0, std::pow(nval, -p.p));
      if (!(delta > 0.0)) continue;
      const double shift = nval * eps_eff;
      try_dist(carve_shift(proj, delta, shift, true), "escape-top");
      try_dist(carve_shift(proj, delta, shift, false), "escape-bottom");
    }
  }

  // family (c)
  if (cfg.use_ascent && p.infinite) {
    // coordinate search over {-eps, 0, +eps}, seeded by the best so far
    std::vector<std::vector<double>> seeds;
    seeds.emplace_back(n, eps_eff);
    seeds.emplace_back(n, -eps_eff);
    seeds.emplace_back(n, 0.0);
    if (!best.argmax.empty()) seeds.push_back(best.argmax);
    for (auto seed_v : seeds) {
      for (double& x : seed_v) x = std::clamp(x, -eps_eff, eps_eff);
      double cur;
      try {
        cur = eval_risk(proj.perturbed(seed_v), risk);
      } catch (const EvalError&) {
        continue;
      }
      for (int pass = 0; pass < 6; ++pass) {
        bool improved = false;
        for (std::size_t i = 0; i < n; ++i) {
          const double keep = seed_v[i];
          for (double cand : {-eps_eff, 0.0, eps_eff}) {
            if (cand == keep) continue;
            seed_v[i] = cand;
            double val;
            try {
              val = eval_risk(proj.perturbed(seed_v), risk);
            } catch (const EvalError&) {
              val = cur;
            }
            if (val > cur + 1e-15) {
              cur = val;
              improved = true;
            } else {
              seed_v[i] = keep;
            }
          }
        }
        if (!improved) break;
      }
      if (cur > best.value) {
        best.value = cur;
        best.argmax = seed_v;
        best.family = "sign-search";
      }
    }
  } else if (cfg.use_ascent) {
    const std::vector<double> seed_best = best.argmax;
    for (int restart = 0; restart < cfg.restarts; ++restart) {
      Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(restart));
      std::vector<double> v(n, 0.0);
      if (restart == 0 && !seed_best.empty()) {
        v = seed_best;
      } else if (restart > 1) {
        for (double& x : v) x = rng.normal();
        const double radius = eps_eff * rng.uniform01();
        const double nv = weighted_norm(w, v, p);
        if (nv > 0.0)
          for (double& x : v) x *= radius / nv;
      }

      for (int iter = 0; iter < cfg.ascent_iters; ++iter) {
        std::vector<double> g;
        try {
          g = numeric_gradient(proj, risk, v);
        } catch (const EvalError&) {
          break;
        }
        const double step = eps_eff / std::sqrt(static_cast<double>(iter + 1));
        for (std::size_t i = 0; i < n; ++i) v[i] += step * g[i];
        project_feasible(w, v, p, eps_eff);
      }
      double cur;
      try {
        cur = eval_risk(proj.perturbed(v), risk);
      } catch (const EvalError&) {
        continue;
      }

      // conditional-gradient polish; monotone because the catalog risks are
      // convex in the perturbation
      for (int iter = 0; iter < cfg.polish_iters; ++iter) {
        std::vector<double> g;
        try {
          g = numeric_gradient(proj, risk, v);
        } catch (const EvalError&) {
          break;
        }
        std::vector<double> u = linear_max_point(w, g, p, eps_eff);
        double val;
        try {
          val = eval_risk(proj.perturbed(u), risk);
        } catch (const EvalError&) {
          break;
        }
        if (val > cur + 1e-15) {
          cur = val;
          v = std::move(u);
        } else {
          break;
        }
      }

      if (cur > best.value) {
        best.value = cur;
        best.argmax = v;
        best.family = "ascent";
      }
    }
  }
  return best;
}

namespace {

// sup over the ball of E[ell^order((u) - t)] at fixed t, where the loss acts
// on |z| when abs_arg; folds back into the catalog so families (a)+(b) attain
// the inner worst case.
double inner_sup_fixed_t(const Empirical1D& proj, WOrder p, double eps_eff, const LossSpec& ell,
                         double order, double t, bool abs_arg, const OracleConfig& cfg) {
  LossSpec shifted = shifted_loss(ell, t);
  if (abs_arg) {
    double m = t;
    if (const auto* l = std::get_if<HingePosLoss>(&shifted.v())) m = l->m;
    if (m > 0.0)
      shifted = LossSpec(TwoSidedHingeLoss{0.0, m});
    else if (m < 0.0)
      shifted = LossSpec(ShiftedAbsLoss{0.0, -m});
    else
      shifted = LossSpec(AbsoluteLoss{0.0, 1.0, 0.0});
  }
  OracleConfig inner = cfg;
  inner.use_ascent = false;  // families (a)+(b) attain the catalog forms
  const RiskSpec risk = ExpectedLossRisk{order == 1.0 ? shifted : LossSpec::power(shifted, order)};
  return sup_risk_numeric(proj, p, eps_eff, risk, inner).value;
}

template <typename Risk>
double minimax_gap_impl(const Empirical1D& proj, WOrder p, double eps_eff, const Risk& risk,
                        const OracleConfig& cfg) {
  if (p.infinite) throw std::invalid_argument("minimax gap: finite ball order required");
  constexpr bool kRiskForm = std::is_same_v<Risk, InfRepRisk>;

  // route A: sup over perturbations of the full inf-representable objective
  const double route_a = sup_risk_numeric(proj, p, eps_eff, RiskSpec{risk}, cfg).value;

  // route B: outer minimization over t of the inner numeric sup
  const InfRepResult nominal = eval_inf_rep(proj, risk);

  bool abs_arg = false;
  double lip = 1.0;  // uniform Lipschitz constant of the loss in z
  if constexpr (kRiskForm) {
    abs_arg = risk.abs_arg;
    lip = risk.scale;
  }

  auto outer_at = [&](double t, double eps) {
    const double inner = inner_sup_fixed_t(proj, p, eps, risk.ell, risk.order, t, abs_arg, cfg);
    if constexpr (kRiskForm) return t + risk.scale * std::pow(inner, 1.0 / risk.order);
    return inner;
  };

  // widen until the nominal objective clears the 2*M*eps band, which pins all
  // robust minimizers inside the bracket
  const double range = proj.max() - proj.min();
  double delta = range + risk.ell.shift_bound() + std::abs(nominal.minimizer) + 1.0;
  for (int tries = 0; tries < 40; ++tries) {
    const double band = nominal.value + 2.0 * lip * eps_eff + 1e-9;
    if (outer_at(nominal.minimizer - delta, 0.0) > band &&
        outer_at(nominal.minimizer + delta, 0.0) > band)
      break;
    delta *= 2.0;
  }

  auto outer = [&](double t) { return outer_at(t, eps_eff); };
  const double tol = 1e-11 * (1.0 + range + delta);
  const auto [t_star, route_b] =
      minimize_convex_1d(outer, nominal.minimizer - delta, nominal.minimizer + delta, tol);
  (void)t_star;
  return std::abs(route_a - route_b);
}

}  // namespace

double minimax_gap(const Empirical1D& proj, WOrder p, double eps_eff, const InfRepRisk& risk,
                   const OracleConfig& cfg) {
  return minimax_gap_impl(proj, p, eps_eff, risk, cfg);
}

double minimax_gap(const Empirical1D& proj, WOrder p, double eps_eff, const InfRepDev& risk,
                   const OracleConfig& cfg) {
  return minimax_gap_impl(proj, p, eps_eff, risk, cfg);
}

FalsifyReport falsify_equivalence(const LossSpec& loss, WOrder p,
                                  const std::vector<std::pair<Empirical1D, double>>& instances,
                                  std::span<const double> c_grid, const OracleConfig& cfg) {
  if (c_grid.empty()) throw std::invalid_argument("falsify: need a non-empty C grid");
  FalsifyReport report;
  for (const auto& [dist, eps] : instances) {
    FalsifyInstance inst;
    inst.epsilon = eps;
    inst.nominal = eval_expected_loss(dist, loss);
    inst.sup = sup_risk_numeric(dist, p, eps, ExpectedLossRisk{loss}, cfg).value;
    report.instances.push_back(inst);
  }

  auto gap = [&](double c) {
    double worst = 0.0;
    for (const auto& inst : report.instances)
      worst = std::max(worst, std::abs(inst.sup - inst.nominal - c * inst.epsilon));
    return worst;
  };

  std::vector<double> grid(c_grid.begin(), c_grid.end());
  std::sort(grid.begin(), grid.end());
  std::size_t best_idx = 0;
  double best_gap = gap(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double gc = gap(grid[i]);
    if (gc < best_gap) {
      best_gap = gc;
      best_idx = i;
    }
  }
  // convex in C: refine between the neighbours of the grid winner
  const double lo = grid[best_idx > 0 ? best_idx - 1 : 0];
  const double hi = grid[std::min(best_idx + 1, grid.size() - 1)];
  auto [c_ref, gap_ref] = minimize_convex_1d(gap, lo, hi, 1e-13);
  if (gap_ref <= best_gap) {
    report.best_c = c_ref;
    report.floor_value = gap_ref;
  } else {
    report.best_c = grid[best_idx];
    report.floor_value = best_gap;
  }
  return report;
}

}  // namespace wdro
