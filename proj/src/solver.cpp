#include "wdro/solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wdro/rng.hpp"

namespace wdro {

DecisionSet::DecisionSet(NormBallSet v) : v_(std::move(v)) {
  if (!(std::get<NormBallSet>(v_).radius > 0.0))
    throw std::invalid_argument("NormBallSet: radius must be > 0");
}
DecisionSet::DecisionSet(AnnulusSet v) : v_(std::move(v)) {
  const auto& a = std::get<AnnulusSet>(v_);
  if (!(a.lo > 0.0 && a.lo <= a.hi))
    throw std::invalid_argument("AnnulusSet: need 0 < lo <= hi");
}
DecisionSet::DecisionSet(BoxSet v) : v_(std::move(v)) {
  const auto& b = std::get<BoxSet>(v_);
  if (b.lo.size() != b.hi.size() || b.lo.empty())
    throw std::invalid_argument("BoxSet: lo/hi size mismatch");
  for (std::size_t i = 0; i < b.lo.size(); ++i)
    if (b.lo[i] > b.hi[i]) throw std::invalid_argument("BoxSet: lo exceeds hi");
}
DecisionSet::DecisionSet(FiniteSet v) : v_(std::move(v)) {
  if (std::get<FiniteSet>(v_).candidates.empty())
    throw std::invalid_argument("FiniteSet: no candidates");
}
DecisionSet::DecisionSet(FixedFirstCoordinate v) : v_(std::move(v)) {
  if (!std::get<FixedFirstCoordinate>(v_).inner)
    throw std::invalid_argument("FixedFirstCoordinate: missing inner set");
}

namespace {

NormSpec tail_norm(const NormSpec& norm, std::size_t skip) {
  if (const auto* w = std::get_if<WeightedL2Norm>(&norm)) {
    std::vector<double> tail(w->weights.begin() + static_cast<long>(skip), w->weights.end());
    return WeightedL2Norm{std::move(tail)};
  }
  return norm;
}

std::vector<double> scale_to(std::span<const double> beta, const NormSpec& ground, double target) {
  const double nb = dual_norm(beta, ground);
  std::vector<double> out(beta.begin(), beta.end());
  if (nb == 0.0) {
    out.assign(beta.size(), 0.0);
    std::vector<double> e1(beta.size(), 0.0);
    e1[0] = 1.0;
    out[0] = target / dual_norm(e1, ground);
    return out;
  }
  for (double& x : out) x *= target / nb;
  return out;
}

}  // namespace

std::vector<double> project_decision(std::span<const double> beta, const DecisionSet& set,
                                     const NormSpec& ground_norm) {
  struct Vis {
    std::span<const double> beta;
    const NormSpec& norm;

    std::vector<double> operator()(const NormBallSet& s) const {
      const double nb = dual_norm(beta, norm);
      std::vector<double> out(beta.begin(), beta.end());
      if (nb > s.radius)
        for (double& x : out) x *= s.radius / nb;
      return out;
    }
    std::vector<double> operator()(const AnnulusSet& s) const {
      const double nb = dual_norm(beta, norm);
      if (nb < s.lo) return scale_to(beta, norm, s.lo);
      if (nb > s.hi) return scale_to(beta, norm, s.hi);
      return {beta.begin(), beta.end()};
    }
    std::vector<double> operator()(const BoxSet& s) const {
      if (s.lo.size() != beta.size()) throw std::invalid_argument("BoxSet: dimension mismatch");
      std::vector<double> out(beta.begin(), beta.end());
      for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], s.lo[i], s.hi[i]);
      return out;
    }
    std::vector<double> operator()(const FiniteSet& s) const {
      std::size_t best = 0;
      double best_d = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < s.candidates.size(); ++k) {
        if (s.candidates[k].size() != beta.size())
          throw std::invalid_argument("FiniteSet: dimension mismatch");
        double d = 0.0;
        for (std::size_t i = 0; i < beta.size(); ++i) {
          const double diff = s.candidates[k][i] - beta[i];
          d += diff * diff;
        }
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      return s.candidates[best];
    }
    std::vector<double> operator()(const FixedFirstCoordinate& s) const {
      if (beta.empty()) throw std::invalid_argument("FixedFirstCoordinate: empty beta");
      const std::vector<double> tail =
          project_decision(beta.subspan(1), *s.inner, tail_norm(norm, 1));
      std::vector<double> out;
      out.reserve(beta.size());
      out.push_back(1.0);
      out.insert(out.end(), tail.begin(), tail.end());
      return out;
    }
  };
  return std::visit(Vis{beta, ground_norm}, set.v());
}

double feasibility_residual(std::span<const double> beta, const DecisionSet& set,
                            const NormSpec& ground_norm) {
  struct Vis {
    std::span<const double> beta;
    const NormSpec& norm;

    double operator()(const NormBallSet& s) const {
      return std::max(0.0, dual_norm(beta, norm) - s.radius);
    }
    double operator()(const AnnulusSet& s) const {
      const double nb = dual_norm(beta, norm);
      return std::max({0.0, nb - s.hi, s.lo - nb});
    }
    double operator()(const BoxSet& s) const {
      double r = 0.0;
      for (std::size_t i = 0; i < beta.size(); ++i)
        r = std::max({r, s.lo[i] - beta[i], beta[i] - s.hi[i]});
      return r;
    }
    double operator()(const FiniteSet& s) const {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& c : s.candidates) {
        double d = 0.0;
        for (std::size_t i = 0; i < beta.size(); ++i) d = std::max(d, std::abs(c[i] - beta[i]));
        best = std::min(best, d);
      }
      return best;
    }
    double operator()(const FixedFirstCoordinate& s) const {
      const double head = std::abs(beta[0] - 1.0);
      return std::max(head,
                      feasibility_residual(beta.subspan(1), *s.inner, tail_norm(norm, 1)));
    }
  };
  return std::visit(Vis{beta, ground_norm}, set.v());
}

namespace {

// Per-coordinate bounds of the feasible region (grid construction).
void coordinate_bounds(const DecisionSet& set, const NormSpec& norm, std::size_t dim,
                       std::vector<double>& lo, std::vector<double>& hi) {
  if (const auto* s = std::get_if<BoxSet>(&set.v())) {
    lo = s->lo;
    hi = s->hi;
    return;
  }
  double radius = 1.0;
  if (const auto* s = std::get_if<NormBallSet>(&set.v())) radius = s->radius;
  if (const auto* s = std::get_if<AnnulusSet>(&set.v())) radius = s->hi;
  lo.assign(dim, 0.0);
  hi.assign(dim, 0.0);
  for (std::size_t i = 0; i < dim; ++i) {
    double scale = radius;
    if (const auto* w = std::get_if<WeightedL2Norm>(&norm)) scale = radius * std::sqrt(w->weights[i]);
    lo[i] = -scale;
    hi[i] = scale;
  }
}

struct FreeProblem {
  std::size_t offset = 0;  // 1 when the first coordinate is pinned
  const DecisionSet* set = nullptr;
  NormSpec norm = L2Norm{};
};

}  // namespace

SolveReport solve(const RobustProblem& problem, const DecisionSet& set, const SolverConfig& cfg) {
  const std::size_t dim = problem.data.dim();
  SolveReport report;

  auto objective_full = [&](std::span<const double> beta) {
    return robust_value(problem, beta);
  };

  if (const auto* fs = std::get_if<FiniteSet>(&set.v())) {
    std::size_t best = 0;
    double best_val = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < fs->candidates.size(); ++k) {
      const double val = objective_full(fs->candidates[k]);
      if (val < best_val) {
        best_val = val;
        best = k;
        report.trace.emplace_back(static_cast<int>(k), val);
      }
    }
    report.beta_opt = fs->candidates[best];
    report.value = objective_full(report.beta_opt);
    report.iterations = static_cast<int>(fs->candidates.size());
    report.feasibility_residual = 0.0;
    report.method = "enumeration";
    return report;
  }

  FreeProblem fp;
  fp.set = &set;
  fp.norm = problem.ball.norm;
  if (const auto* ff = std::get_if<FixedFirstCoordinate>(&set.v())) {
    fp.offset = 1;
    fp.set = ff->inner.get();
    fp.norm = tail_norm(problem.ball.norm, 1);
  }
  const std::size_t free_dim = dim - fp.offset;
  if (free_dim == 0) throw std::invalid_argument("solve: no free coordinates");

  std::vector<double> full(dim, 0.0);
  if (fp.offset == 1) full[0] = 1.0;
  auto to_full = [&](const std::vector<double>& theta) {
    for (std::size_t i = 0; i < free_dim; ++i) full[fp.offset + i] = theta[i];
    return std::span<const double>(full);
  };
  auto objective = [&](const std::vector<double>& theta) { return objective_full(to_full(theta)); };
  auto project_free = [&](const std::vector<double>& theta) {
    return project_decision(theta, *fp.set, fp.norm);
  };

  int iter_count = 0;
  std::vector<double> best_theta = project_free(std::vector<double>(free_dim, 0.0));
  double best_val = objective(best_theta);
  report.trace.emplace_back(iter_count, best_val);
  auto consider = [&](const std::vector<double>& theta, double val) {
    if (val < best_val) {
      best_val = val;
      best_theta = theta;
      report.trace.emplace_back(iter_count, val);
    }
  };

  // exhaustive refinement on low-dimensional sets
  const bool gridded = free_dim <= 2 && cfg.grid_per_dim >= 2 &&
                       !std::holds_alternative<FiniteSet>(fp.set->v());
  if (gridded) {
    std::vector<double> lo, hi;
    coordinate_bounds(*fp.set, fp.norm, free_dim, lo, hi);
    const int g = cfg.grid_per_dim;
    std::vector<double> theta(free_dim, 0.0);
    const int total = free_dim == 1 ? g : g * g;
    for (int k = 0; k < total; ++k) {
      const int i = k % g;
      const int j = k / g;
      theta[0] = lo[0] + (hi[0] - lo[0]) * i / (g - 1);
      if (free_dim == 2) theta[1] = lo[1] + (hi[1] - lo[1]) * j / (g - 1);
      const std::vector<double> feas = project_free(theta);
      ++iter_count;
      consider(feas, objective(feas));
    }
  }

  // multi-restart projected subgradient with numerical subgradients
  double step0 = cfg.step0;
  if (step0 <= 0.0) {
    std::vector<double> lo, hi;
    coordinate_bounds(*fp.set, fp.norm, free_dim, lo, hi);
    step0 = 0.0;
    for (std::size_t i = 0; i < free_dim; ++i) step0 = std::max(step0, hi[i] - lo[i]);
    step0 = std::max(0.25 * step0, 1e-3);
  }

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng = Rng::split(cfg.seed, static_cast<std::uint64_t>(restart));
    std::vector<double> theta(free_dim, 0.0);
    if (restart == 0) {
      theta = best_theta;
    } else {
      std::vector<double> lo, hi;
      coordinate_bounds(*fp.set, fp.norm, free_dim, lo, hi);
      for (std::size_t i = 0; i < free_dim; ++i) theta[i] = rng.uniform(lo[i], hi[i]);
      theta = project_free(theta);
    }
    double cur = objective(theta);
    consider(theta, cur);

    for (int iter = 0; iter < cfg.iters; ++iter) {
      ++iter_count;
      std::vector<double> g(free_dim, 0.0);
      std::vector<double> probe = theta;
      for (std::size_t i = 0; i < free_dim; ++i) {
        const double h = 1e-6 * (1.0 + std::abs(theta[i]));
        probe[i] = theta[i] + h;
        const double up = objective(probe);
        probe[i] = theta[i] - h;
        const double dn = objective(probe);
        probe[i] = theta[i];
        g[i] = (up - dn) / (2.0 * h);
      }
      const double step = step0 / std::sqrt(static_cast<double>(iter + 1));
      for (std::size_t i = 0; i < free_dim; ++i) probe[i] = theta[i] - step * g[i];
      theta = project_free(probe);
      cur = objective(theta);
      consider(theta, cur);
    }
  }

  report.beta_opt.assign(dim, 0.0);
  if (fp.offset == 1) report.beta_opt[0] = 1.0;
  for (std::size_t i = 0; i < free_dim; ++i) report.beta_opt[fp.offset + i] = best_theta[i];
  report.value = objective_full(report.beta_opt);
  report.iterations = iter_count;
  report.trace.emplace_back(iter_count, report.value);
  report.feasibility_residual = feasibility_residual(report.beta_opt, set, problem.ball.norm);
  report.method = gridded ? "grid+subgradient" : "subgradient";
  return report;
}

}  // namespace wdro
