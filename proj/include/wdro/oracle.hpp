#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wdro/distribution.hpp"
#include "wdro/order.hpp"
#include "wdro/risk.hpp"

namespace wdro {

struct OracleConfig {
  int restarts = 16;
  int ascent_iters = 100;
  int polish_iters = 25;
  int escape_points = 80;   // log-spaced sizes for the escaping sequence
  double n_max = 1e5;       // largest escape index
  std::uint64_t seed = 12345;
  bool use_ascent = true;
};

struct SupResult {
  double value = 0.0;
  // Per-atom perturbation when the best candidate is representable that way;
  // empty for atom-splitting candidates.
  std::vector<double> argmax;
  std::string family;  // which candidate family won
};

// Numeric worst case of rho over the 1-D ball of radius eps_eff around proj:
// the max over (a) the analytic maximizers lifted from the closed-form
// proofs, (b) the escaping sequence putting mass 1/n^p at distance n*eps on
// the extreme tail, and (c) multi-restart projected gradient ascent on the
// per-atom perturbation (coordinate sign search when p = inf). Every
// candidate is feasible, so the result is always a lower bound on the true
// sup and at least the nominal risk.
SupResult sup_risk_numeric(const Empirical1D& proj, WOrder p, double eps_eff,
                           const RiskSpec& risk, const OracleConfig& cfg = {});

// |inf_t sup_V - sup_V inf_t| for the inf-representable objectives, both
// orders computed numerically and independently.
double minimax_gap(const Empirical1D& proj, WOrder p, double eps_eff, const InfRepRisk& risk,
                   const OracleConfig& cfg = {});
double minimax_gap(const Empirical1D& proj, WOrder p, double eps_eff, const InfRepDev& risk,
                   const OracleConfig& cfg = {});

struct FalsifyInstance {
  double epsilon;
  double nominal;
  double sup;
};

struct FalsifyReport {
  std::vector<FalsifyInstance> instances;
  double best_c = 0.0;
  double floor_value = 0.0;  // min over C of max over instances |sup - nominal - C*eps|
};

// Tests whether any additive coefficient C can explain the numeric worst case
// across instances; the gap function is convex in C, so the grid seed is
// refined by golden section.
FalsifyReport falsify_equivalence(const LossSpec& loss, WOrder p,
                                  const std::vector<std::pair<Empirical1D, double>>& instances,
                                  std::span<const double> c_grid, const OracleConfig& cfg = {});

}  // namespace wdro
