#include "wdro/genbound.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wdro/kernels.hpp"
#include "wdro/rng.hpp"

namespace wdro {
namespace {

RadiusResult schedule_from_r(double p, double N, double r, const ConcentrationConfig& cfg) {
  if (!(cfg.a > p)) throw std::invalid_argument("radius schedule: tail exponent a must exceed p");
  if (!(cfg.L_D > 0.0)) throw std::invalid_argument("radius schedule: L_D must be > 0");
  const double ratio = r / N;
  RadiusResult out;
  out.sqrt_branch = N >= r;
  out.epsilon = (out.sqrt_branch ? std::sqrt(ratio) : std::pow(ratio, p / cfg.a)) / cfg.L_D;
  return out;
}

}  // namespace

RadiusResult radius_schedule(double p, double N, double eta, const ConcentrationConfig& cfg) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("radius schedule: eta in (0,1)");
  if (!(N >= 1.0)) throw std::invalid_argument("radius schedule: N must be >= 1");
  if (!(cfg.c1 > 0.0 && cfg.c2 > 0.0))
    throw std::invalid_argument("radius schedule: c1, c2 must be > 0");
  const double r = std::max(0.0, std::log(cfg.c1 / eta)) / cfg.c2;
  return schedule_from_r(p, N, r, cfg);
}

double covering_log_bound(int n, double B, double tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("covering bound: tau must be > 0");
  if (n < 0 || B < 0.0) throw std::invalid_argument("covering bound: n, B must be >= 0");
  return static_cast<double>(n) * std::log1p(2.0 * B / tau);
}

UnionRadius union_radius_and_residual(double p, double N, double eta,
                                      const ConcentrationConfig& cfg, const UnionConfig& ucfg,
                                      const MomentEstimates& moments) {
  if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("union bound: eta in (0,1)");
  if (!(N >= 1.0)) throw std::invalid_argument("union bound: N must be >= 1");
  if (!(ucfg.k >= 1.0 && ucfg.k <= p))
    throw std::invalid_argument("union bound: need k in [1, p]");

  const double clb = covering_log_bound(ucfg.n, ucfg.B, 1.0 / N);
  // ceil(exp(clb)) in log space; the ceiling only matters while exp fits
  double log_cover;
  if (clb <= 34.0) {
    log_cover = std::log(std::ceil(std::exp(clb)));
  } else {
    log_cover = clb;
  }

  UnionRadius out;
  out.deflated_eta = eta / std::exp(log_cover);
  const double r = std::max(0.0, std::log(cfg.c1) - std::log(eta) + log_cover) / cfg.c2;
  const RadiusResult rr = schedule_from_r(p, N, r, cfg);
  out.eps_N = rr.epsilon;
  out.sqrt_branch = rr.sqrt_branch;

  const double mean_k = moments.mean_norm_k;
  const double var_k = moments.var_norm_k;
  if (ucfg.form == UnionConfig::Form::general_risk) {
    out.tau_N = ucfg.M *
                (2.0 * std::pow(mean_k, 1.0 / ucfg.k) + std::pow(var_k, 1.0 / (2.0 * ucfg.k)) +
                 out.eps_N) /
                N;
  } else {
    const double two_k = std::pow(2.0, ucfg.k - 1.0);
    out.tau_N = (ucfg.a1 * (two_k + 1.0) * mean_k +
                 ucfg.a1 * two_k * (std::sqrt(var_k) + std::pow(out.eps_N, ucfg.k)) +
                 2.0 * ucfg.a2) /
                N;
  }
  return out;
}

double cvar_of_samples(std::vector<double> samples, double alpha) {
  if (samples.empty()) throw std::invalid_argument("cvar_of_samples: empty sample");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("cvar_of_samples: alpha in (0,1)");
  const std::size_t h = samples.size();
  const double hd = static_cast<double>(h);

  // first index i with (i+1)/h > alpha, matching the left-quantile rule
  std::size_t i = static_cast<std::size_t>(std::floor(alpha * hd));
  if (i >= h) i = h - 1;
  while (i + 1 < h && (static_cast<double>(i) + 1.0) / hd <= alpha) ++i;
  while (i > 0 && static_cast<double>(i) / hd > alpha) --i;

  std::nth_element(samples.begin(), samples.begin() + static_cast<long>(i), samples.end());
  const double z_i = samples[i];
  double tail = 0.0;
  for (std::size_t j = i + 1; j < h; ++j) tail += samples[j];
  tail /= hd;
  tail += ((static_cast<double>(i) + 1.0) / hd - alpha) * z_i;
  return tail / (1.0 - alpha);
}

void wilson_interval(int successes, int n, double& lo, double& hi) {
  if (n <= 0) {
    lo = 0.0;
    hi = 1.0;
    return;
  }
  const double z = 1.959963984540054;
  const double nd = n;
  const double phat = static_cast<double>(successes) / nd;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nd;
  const double center = (phat + z2 / (2.0 * nd)) / denom;
  const double half = z * std::sqrt(phat * (1.0 - phat) / nd + z2 / (4.0 * nd * nd)) / denom;
  lo = std::max(0.0, center - half);
  hi = std::min(1.0, center + half);
}

namespace {

// Column-major feature block sampled from the declared normal population.
std::vector<double> sample_features(Rng& rng, int rows, int dim,
                                    const std::vector<double>& mean) {
  std::vector<double> cols(static_cast<std::size_t>(rows) * dim);
  for (int j = 0; j < dim; ++j) {
    const double mu = mean.empty() ? 0.0 : mean[static_cast<std::size_t>(j)];
    for (int i = 0; i < rows; ++i)
      cols[static_cast<std::size_t>(j) * rows + i] = mu + rng.normal();
  }
  return cols;
}

}  // namespace

double holdout_risk(const CoverageConfig& cfg, std::span<const double> beta,
                    std::uint64_t stream_index) {
  Rng rng = Rng::split(cfg.seed, 0x484f4c44u + stream_index);
  const int h = cfg.holdout_size;
  const std::vector<double> cols = sample_features(rng, h, cfg.dim, cfg.feature_mean);
  std::vector<double> proj(h, 0.0);
  for (int j = 0; j < cfg.dim; ++j)
    kernels::axpy(beta[static_cast<std::size_t>(j)],
                  cols.data() + static_cast<std::size_t>(j) * h, proj.data(), h);
  return cvar_of_samples(std::move(proj), cfg.alpha);
}

std::vector<CoverageRow> coverage_experiment(const CoverageConfig& cfg) {
  if (cfg.trials < 1 || cfg.train_size < 1 || cfg.dim < 1 || cfg.holdout_size < 1)
    throw std::invalid_argument("coverage: sizes must be positive");

  const std::size_t n_eps = cfg.eps_grid.size();
  std::vector<int> success(n_eps, 0), failures(n_eps, 0);

  // hold-out drawn once per experiment; the per-beta risk is recomputed on it
  Rng hold_rng = Rng::split(cfg.seed, 0x484f4c44u);
  const int h = cfg.holdout_size;
  const std::vector<double> hold_cols = sample_features(hold_rng, h, cfg.dim, cfg.feature_mean);
  auto oos_risk = [&](std::span<const double> beta) {
    std::vector<double> proj(h, 0.0);
    for (int j = 0; j < cfg.dim; ++j)
      kernels::axpy(beta[static_cast<std::size_t>(j)],
                    hold_cols.data() + static_cast<std::size_t>(j) * h, proj.data(), h);
    return cvar_of_samples(std::move(proj), cfg.alpha);
  };

  const DecisionSet set{AnnulusSet{cfg.set_lo, cfg.set_hi}};
  for (int trial = 0; trial < cfg.trials; ++trial) {
    Rng rng = Rng::split(cfg.seed, 1 + static_cast<std::uint64_t>(trial));
    const int n = cfg.train_size;
    const std::vector<double> cols = sample_features(rng, n, cfg.dim, cfg.feature_mean);
    std::vector<std::vector<double>> rows(n, std::vector<double>(cfg.dim));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < cfg.dim; ++j)
        rows[i][static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j) * n + i];
    const LabelledDataset train = LabelledDataset::uniform(std::vector<double>(n, 1.0), rows);

    for (std::size_t e = 0; e < n_eps; ++e) {
      RobustProblem problem{train, CVaRRisk{cfg.alpha},
                            BallSpec{cfg.ball_p, cfg.eps_grid[e], L2Norm{}}, Task::risk_min};
      SolverConfig scfg;
      scfg.iters = cfg.solver_iters;
      scfg.restarts = cfg.solver_restarts;
      scfg.grid_per_dim = 0;  // dim > 2 in the standard scenario
      scfg.seed = Rng::split(cfg.seed, 0x504c414eu + static_cast<std::uint64_t>(trial) * n_eps + e)
                      .next_u64();
      try {
        const SolveReport report = solve(problem, set, scfg);
        const double j_oos = oos_risk(report.beta_opt);
        if (j_oos <= report.value) ++success[e];
      } catch (const std::exception&) {
        ++failures[e];
      }
    }
  }

  std::vector<CoverageRow> rows;
  rows.reserve(n_eps);
  for (std::size_t e = 0; e < n_eps; ++e) {
    CoverageRow row;
    row.eps = cfg.eps_grid[e];
    row.failures = failures[e];
    row.trials = cfg.trials - failures[e];
    row.coverage = row.trials > 0 ? static_cast<double>(success[e]) / row.trials : 0.0;
    wilson_interval(success[e], row.trials, row.ci_lo, row.ci_hi);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace wdro
