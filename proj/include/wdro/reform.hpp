#pragma once

#include <span>
#include <stdexcept>

#include "wdro/dataset.hpp"
#include "wdro/risk.hpp"
#include "wdro/transport.hpp"

namespace wdro {

enum class Task { classification, regression, risk_min };

struct RobustProblem {
  LabelledDataset data;
  RiskSpec risk;
  BallSpec ball;
  Task task = Task::risk_min;
};

// Raised when no exact reformulation clause covers the risk/ball combination
// (including the combinations proved impossible).
struct UnsupportedCombination : std::runtime_error {
  explicit UnsupportedCombination(const std::string& reason)
      : std::runtime_error("unsupported combination: " + reason) {}
};

// Exact worst-case value sup over the ball of rho(Y * beta.X), dispatched to
// the applicable closed-form clause. Throws UnsupportedCombination otherwise.
double robust_value(const RobustProblem& problem, std::span<const double> beta);

// Individual clauses, exposed for cross-checks. Each throws
// UnsupportedCombination when its preconditions fail.

// E[loss] + Lip(loss) * eps * ||beta||_*  (linear/absolute losses for every
// ball order; at p=1 any loss of the catalog with an analytic constant).
double lipschitz_reg_value(const RobustProblem& problem, std::span<const double> beta);

// ((E[loss^p])^{1/p} + eps*||beta||_*)^p for the four powered forms with
// exponent equal to the ball order p in (1,inf).
double highorder_reg_value(const RobustProblem& problem, std::span<const double> beta);

// inf-representable risks: nominal + scale * eps * ||beta||_*.
double infrep_reg_value(const RobustProblem& problem, std::span<const double> beta);

// deviation forms: ((V)^{1/p} + eps*||beta||_*)^p.
double devrep_reg_value(const RobustProblem& problem, std::span<const double> beta);

// type-infinity ball with a monotone risk: risk of the shifted projection.
double typeinf_value(const RobustProblem& problem, std::span<const double> beta);

// distortion functionals: nominal + ||h'_- (+ h(0)-h(1))||_q * eps*||beta||_*.
double distortion_reg_value(const RobustProblem& problem, std::span<const double> beta);

}  // namespace wdro
