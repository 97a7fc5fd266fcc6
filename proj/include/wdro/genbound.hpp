#pragma once

#include <cstdint>
#include <vector>

#include "wdro/order.hpp"
#include "wdro/solver.hpp"

namespace wdro {

// Constants of the one-dimensional concentration bound. The source theorem
// pins c1, c2 only up to unspecified constants, so they are configuration
// inputs here; every report echoes the values used.
struct ConcentrationConfig {
  double c1 = 2.0;
  double c2 = 1.0;
  double a = 3.0;    // tail exponent, > p
  double A = 1.0;    // tail moment bound; recorded, not used in formulas
  double U_D = 1.0;  // sup of ||beta||_* over the decision set
  double L_D = 1.0;  // inf of ||beta||_*, > 0
};

struct RadiusResult {
  double epsilon;
  bool sqrt_branch;  // true on the large-N branch
};

// eps_{p,N}(eta)/L_D with eps = (log(c1/eta)/(c2 N))^{1/2} when
// N >= log(c1/eta)/c2 and the same ratio to the power p/a otherwise.
RadiusResult radius_schedule(double p, double N, double eta, const ConcentrationConfig& cfg);

// n * log(1 + 2B/tau), the covering-number log bound for a diameter-B set.
double covering_log_bound(int n, double B, double tau);

struct UnionConfig {
  enum class Form { general_risk, expected_loss };
  Form form = Form::general_risk;
  double M = 1.0;   // general-risk modulus
  double a1 = 0.0;  // expected-loss growth coefficients
  double a2 = 0.0;
  double k = 1.0;  // moment order in [1, p]
  int n = 1;       // dimension of the decision set
  double B = 2.0;  // diameter of the decision set
};

// Empirical plug-ins for E||X||^k and Var(||X||^k); the population values are
// unavailable in practice, so these are always flagged as estimates.
struct MomentEstimates {
  double mean_norm_k = 0.0;
  double var_norm_k = 0.0;
  bool estimated = true;
};

struct UnionRadius {
  double eps_N;
  double tau_N;
  double deflated_eta;
  bool sqrt_branch;
};

UnionRadius union_radius_and_residual(double p, double N, double eta,
                                      const ConcentrationConfig& cfg, const UnionConfig& ucfg,
                                      const MomentEstimates& moments);

// Exact CVaR of an equal-weight sample; selection-based hot path for the
// large hold-outs (equivalence-tested against eval_cvar). Consumes `samples`.
double cvar_of_samples(std::vector<double> samples, double alpha);

struct CoverageConfig {
  int dim = 5;
  int train_size = 50;
  int trials = 1000;
  int holdout_size = 100000;
  std::vector<double> eps_grid{0.0, 0.05, 0.1, 0.2, 0.5, 1.0};
  double alpha = 0.9;  // CVaR level
  WOrder ball_p = WOrder::finite(1.0);
  std::vector<double> feature_mean;  // defaults to zeros
  double set_lo = 1.0;               // annulus radii for the decision set
  double set_hi = 1.0;
  std::uint64_t seed = 7;
  int solver_iters = 100;
  int solver_restarts = 3;
};

struct CoverageRow {
  double eps;
  int trials;        // trials that produced a solve
  int failures;      // excluded trials (solver errors)
  double coverage;   // fraction with J_oos <= J_hat
  double ci_lo;      // Wilson 95%
  double ci_hi;
};

// Monte Carlo coverage of the event {out-of-sample risk <= in-sample robust
// value} for the CVaR risk-minimization scenario with standard normal
// features; deterministic given the seed.
std::vector<CoverageRow> coverage_experiment(const CoverageConfig& cfg);

// Wilson 95% interval for x successes out of n.
void wilson_interval(int successes, int n, double& lo, double& hi);

// Out-of-sample risk proxy on a fresh hold-out stream (stream_index selects
// disjoint draws).
double holdout_risk(const CoverageConfig& cfg, std::span<const double> beta,
                    std::uint64_t stream_index);

}  // namespace wdro
