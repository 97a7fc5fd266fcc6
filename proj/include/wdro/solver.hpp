#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wdro/reform.hpp"

namespace wdro {

// Decision-set catalog; ball and annulus radii are measured in the dual norm
// of the problem's ground norm.
struct NormBallSet {
  double radius;
};
struct AnnulusSet {
  double lo;
  double hi;
};
struct BoxSet {
  std::vector<double> lo;
  std::vector<double> hi;
};
struct FiniteSet {
  std::vector<std::vector<double>> candidates;
};
class DecisionSet;
// beta = (1, theta) with theta constrained by the inner set over the
// remaining coordinates (the regression parameterization).
struct FixedFirstCoordinate {
  std::shared_ptr<const DecisionSet> inner;
};

class DecisionSet {
 public:
  using Variant =
      std::variant<NormBallSet, AnnulusSet, BoxSet, FiniteSet, FixedFirstCoordinate>;
  DecisionSet(NormBallSet v);
  DecisionSet(AnnulusSet v);
  DecisionSet(BoxSet v);
  DecisionSet(FiniteSet v);
  DecisionSet(FixedFirstCoordinate v);
  const Variant& v() const { return v_; }

 private:
  Variant v_;
};

// Map beta to a feasible point: radial rescale for dual-norm balls and
// annuli (the Euclidean projection when the dual norm is L2), per-coordinate
// clamp for boxes, nearest member for finite sets. beta = 0 against an
// annulus lands deterministically on e1 scaled to the inner radius.
std::vector<double> project_decision(std::span<const double> beta, const DecisionSet& set,
                                     const NormSpec& ground_norm);

double feasibility_residual(std::span<const double> beta, const DecisionSet& set,
                            const NormSpec& ground_norm);

struct SolverConfig {
  int iters = 250;
  int restarts = 8;
  std::uint64_t seed = 1;
  double step0 = 0.0;     // 0: derived from the decision-set scale
  int grid_per_dim = 65;  // exhaustive refinement for <= 2 free dims
};

struct SolveReport {
  std::vector<double> beta_opt;
  double value = 0.0;
  int iterations = 0;
  std::vector<std::pair<int, double>> trace;  // best-so-far improvements
  double feasibility_residual = 0.0;
  std::string method;
};

SolveReport solve(const RobustProblem& problem, const DecisionSet& set,
                  const SolverConfig& cfg = {});

}  // namespace wdro
