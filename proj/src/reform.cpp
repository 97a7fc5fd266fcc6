#include "wdro/reform.hpp"

#include <cmath>

namespace wdro {
namespace {

struct Projected {
  Empirical1D proj;
  double eps_eff;
};

Projected project_problem(const RobustProblem& problem, std::span<const double> beta) {
  if (beta.size() != problem.data.dim())
    throw std::invalid_argument("robust_value: beta dimension mismatch");
  if (!(problem.ball.epsilon >= 0.0))
    throw std::invalid_argument("robust_value: ball radius must be >= 0");
  if (problem.task == Task::regression) {
    if (!problem.data.all_labels_positive())
      throw std::invalid_argument("regression task requires all labels +1");
    if (problem.data.dim() < 2 || beta[0] != 1.0)
      throw std::invalid_argument("regression task requires beta = (1, -beta_r) with n >= 2");
  }
  return {project_pushforward(problem.data, beta),
          problem.ball.epsilon * dual_norm(beta, problem.ball.norm)};
}

const LossSpec& unwrap_unit_powers(const LossSpec& loss) {
  const LossSpec* cur = &loss;
  while (const auto* p = std::get_if<PowerLoss>(&cur->v())) {
    if (p->exponent != 1.0) break;
    cur = p->base.get();
  }
  return *cur;
}

// The four powered forms of the higher-order theorem; Absolute(m,1,0) is the
// two-sided hinge with m2 = 0.
bool in_four_forms(const LossSpec& loss) {
  if (std::holds_alternative<HingePosLoss>(loss.v())) return true;
  if (std::holds_alternative<HingeNegLoss>(loss.v())) return true;
  if (std::holds_alternative<TwoSidedHingeLoss>(loss.v())) return true;
  if (std::holds_alternative<ShiftedAbsLoss>(loss.v())) return true;
  if (const auto* a = std::get_if<AbsoluteLoss>(&loss.v()))
    return a->scale == 1.0 && a->intercept == 0.0;
  return false;
}

double cvar_coefficient(double alpha, WOrder ball_p) {
  // ||h'_-||_q for the CVaR distortion equals (1-alpha)^{-1/p}
  if (ball_p.infinite) return 1.0;
  return std::pow(1.0 - alpha, -1.0 / ball_p.p);
}

}  // namespace

double lipschitz_reg_value(const RobustProblem& problem, std::span<const double> beta) {
  const auto* exp_risk = std::get_if<ExpectedLossRisk>(&problem.risk);
  if (!exp_risk) throw UnsupportedCombination("lipschitz clause applies to expected losses only");
  const LossSpec& loss = unwrap_unit_powers(exp_risk->loss);
  const WOrder p = problem.ball.p;

  double lip = -1.0;
  if (const auto* l = std::get_if<LinearLoss>(&loss.v())) {
    lip = std::abs(l->slope);
  } else if (const auto* l = std::get_if<AbsoluteLoss>(&loss.v())) {
    lip = l->scale;
  } else if (std::holds_alternative<ShiftedAbsLoss>(loss.v())) {
    lip = 1.0;
  } else if (const auto* l = std::get_if<TwoSidedHingeLoss>(&loss.v())) {
    if (l->m2 == 0.0 || (!p.infinite && p.p == 1.0)) lip = 1.0;
  } else if (std::holds_alternative<HingePosLoss>(loss.v()) ||
             std::holds_alternative<HingeNegLoss>(loss.v())) {
    if (!p.infinite && p.p == 1.0) lip = 1.0;
  }
  if (lip < 0.0)
    throw UnsupportedCombination(
        "loss '" + loss.describe() +
        "' is outside the linear/absolute family required for orders above 1");

  const Projected pr = project_problem(problem, beta);
  return eval_expected_loss(pr.proj, loss) + lip * pr.eps_eff;
}

double highorder_reg_value(const RobustProblem& problem, std::span<const double> beta) {
  const auto* exp_risk = std::get_if<ExpectedLossRisk>(&problem.risk);
  if (!exp_risk) throw UnsupportedCombination("higher-order clause applies to expected losses");
  const auto* power = std::get_if<PowerLoss>(&exp_risk->loss.v());
  if (!power) throw UnsupportedCombination("higher-order clause needs a powered loss");
  const WOrder p = problem.ball.p;
  if (p.infinite || p.p <= 1.0)
    throw UnsupportedCombination("higher-order clause needs a finite ball order above 1");
  if (power->exponent != p.p)
    throw UnsupportedCombination("loss exponent " + std::to_string(power->exponent) +
                                 " differs from ball order " + std::to_string(p.p));
  if (!in_four_forms(*power->base))
    throw UnsupportedCombination("powered base '" + power->base->describe() +
                                 "' is outside the four admissible forms");

  const Projected pr = project_problem(problem, beta);
  const double nominal_p = eval_expected_loss(pr.proj, exp_risk->loss);
  const double root = std::pow(nominal_p, 1.0 / p.p) + pr.eps_eff;
  return std::pow(root, p.p);
}

double infrep_reg_value(const RobustProblem& problem, std::span<const double> beta) {
  const WOrder p = problem.ball.p;

  if (const auto* cvar = std::get_if<CVaRRisk>(&problem.risk)) {
    if (p.infinite || p.p != 1.0)
      throw UnsupportedCombination("CVaR routes through the inf-representation at order 1 only");
    const Projected pr = project_problem(problem, beta);
    return eval_cvar(pr.proj, cvar->alpha) + pr.eps_eff / (1.0 - cvar->alpha);
  }

  const auto* risk = std::get_if<InfRepRisk>(&problem.risk);
  if (!risk) throw UnsupportedCombination("inf-representation clause needs an inf-rep risk");
  if (p.infinite || risk->order != p.p)
    throw UnsupportedCombination("inf-rep order " + std::to_string(risk->order) +
                                 " must equal the finite ball order");
  const LossSpec& ell = unwrap_unit_powers(risk->ell);
  const bool hinge_pos = std::holds_alternative<HingePosLoss>(ell.v());
  if (risk->abs_arg) {
    if (!hinge_pos)
      throw UnsupportedCombination("abs-composed inf-rep risk supports the positive hinge only");
  } else if (!hinge_pos && !std::holds_alternative<TwoSidedHingeLoss>(ell.v()) &&
             !std::holds_alternative<ShiftedAbsLoss>(ell.v()) && !in_four_forms(ell)) {
    throw UnsupportedCombination("inf-rep loss '" + ell.describe() +
                                 "' is outside the admissible forms");
  } else if (std::holds_alternative<HingeNegLoss>(ell.v())) {
    throw UnsupportedCombination("negative hinge breaks coercivity of the inf-representation");
  }

  const Projected pr = project_problem(problem, beta);
  return eval_inf_rep(pr.proj, *risk).value + risk->scale * pr.eps_eff;
}

double devrep_reg_value(const RobustProblem& problem, std::span<const double> beta) {
  const WOrder p = problem.ball.p;
  if (p.infinite) throw UnsupportedCombination("deviation clause needs a finite ball order");

  InfRepDev dev{LossSpec(AbsoluteLoss{0.0, 1.0, 0.0}), 2.0};
  if (std::holds_alternative<VarianceRisk>(problem.risk)) {
    if (p.p != 2.0) throw UnsupportedCombination("variance requires a type-2 ball");
  } else if (const auto* d = std::get_if<InfRepDev>(&problem.risk)) {
    if (d->order != p.p)
      throw UnsupportedCombination("deviation order " + std::to_string(d->order) +
                                   " must equal the ball order");
    const LossSpec& ell = unwrap_unit_powers(d->ell);
    const bool ok = std::holds_alternative<TwoSidedHingeLoss>(ell.v()) ||
                    std::holds_alternative<ShiftedAbsLoss>(ell.v()) ||
                    (std::get_if<AbsoluteLoss>(&ell.v()) && in_four_forms(ell));
    if (!ok)
      throw UnsupportedCombination("deviation loss '" + ell.describe() +
                                   "' must be the two-sided hinge or shifted absolute form");
    dev = *d;
  } else {
    throw UnsupportedCombination("deviation clause needs a deviation risk");
  }

  const Projected pr = project_problem(problem, beta);
  const double nominal = eval_inf_rep(pr.proj, dev).value;
  const double root = std::pow(nominal, 1.0 / p.p) + pr.eps_eff;
  return std::pow(root, p.p);
}

double typeinf_value(const RobustProblem& problem, std::span<const double> beta) {
  if (!problem.ball.p.infinite)
    throw UnsupportedCombination("shift clause applies to type-infinity balls only");
  const Monotone m = risk_monotonicity(problem.risk);
  if (m == Monotone::none)
    throw UnsupportedCombination("type-infinity ball needs a monotone risk");
  const Projected pr = project_problem(problem, beta);
  const double shift = m == Monotone::increasing ? pr.eps_eff : -pr.eps_eff;
  return eval_risk(pr.proj.shifted(shift), problem.risk);
}

double distortion_reg_value(const RobustProblem& problem, std::span<const double> beta) {
  const WOrder q = problem.ball.p.conjugate();

  if (const auto* r = std::get_if<DistortionRisk>(&problem.risk)) {
    if (!r->h.is_convex())
      throw UnsupportedCombination("distortion clause requires a convex distortion");
    if (r->on_abs && !r->h.is_increasing())
      throw UnsupportedCombination("abs-composed distortion must be increasing");
    const Projected pr = project_problem(problem, beta);
    const Empirical1D base = r->on_abs ? abs_transform(pr.proj) : pr.proj;
    return eval_distortion(base, r->h) + r->h.slope_norm(q) * pr.eps_eff;
  }
  if (const auto* r = std::get_if<DistortionDeviationRisk>(&problem.risk)) {
    if (!r->h.is_convex())
      throw UnsupportedCombination("distortion deviation requires a convex distortion");
    const Projected pr = project_problem(problem, beta);
    const double nominal = eval_distortion(pr.proj.shifted(-pr.proj.mean()), r->h);
    return nominal + r->h.slope_norm(q, r->h.h0() - r->h.h1()) * pr.eps_eff;
  }
  if (const auto* r = std::get_if<CVaRRisk>(&problem.risk)) {
    const Projected pr = project_problem(problem, beta);
    return eval_cvar(pr.proj, r->alpha) + cvar_coefficient(r->alpha, problem.ball.p) * pr.eps_eff;
  }
  if (const auto* r = std::get_if<CVaRDeviationRisk>(&problem.risk)) {
    const DistortionSpec h = DistortionSpec::cvar(r->alpha);
    const Projected pr = project_problem(problem, beta);
    const double nominal = eval_cvar(pr.proj.shifted(-pr.proj.mean()), r->alpha);
    return nominal + h.slope_norm(q, h.h0() - h.h1()) * pr.eps_eff;
  }
  throw UnsupportedCombination("distortion clause needs a distortion-style risk");
}

double robust_value(const RobustProblem& problem, std::span<const double> beta) {
  const WOrder p = problem.ball.p;

  struct Vis {
    const RobustProblem& problem;
    std::span<const double> beta;
    const WOrder p;

    double operator()(const ExpectedLossRisk& r) const {
      const LossSpec& loss = unwrap_unit_powers(r.loss);
      if (const auto* power = std::get_if<PowerLoss>(&loss.v())) {
        if (p.infinite) {
          if (loss.monotonicity() != Monotone::none) return typeinf_value(problem, beta);
          throw UnsupportedCombination("powered non-monotone loss with a type-infinity ball");
        }
        if (power->exponent == p.p) return highorder_reg_value(problem, beta);
        if (power->exponent > p.p)
          throw UnsupportedCombination(
              "worst-case expectation unbounded: loss order exceeds the ball order");
        throw UnsupportedCombination("loss exponent differs from ball order");
      }
      if (std::holds_alternative<LinearLoss>(loss.v()) ||
          std::holds_alternative<AbsoluteLoss>(loss.v()) ||
          std::holds_alternative<ShiftedAbsLoss>(loss.v()))
        return lipschitz_reg_value(problem, beta);
      if (const auto* t = std::get_if<TwoSidedHingeLoss>(&loss.v())) {
        if (t->m2 == 0.0 || (!p.infinite && p.p == 1.0)) return lipschitz_reg_value(problem, beta);
        throw UnsupportedCombination("two-sided hinge is covered only at order 1");
      }
      if (std::holds_alternative<HingePosLoss>(loss.v()) ||
          std::holds_alternative<HingeNegLoss>(loss.v())) {
        if (!p.infinite && p.p == 1.0) return lipschitz_reg_value(problem, beta);
        if (p.infinite) return typeinf_value(problem, beta);
        throw UnsupportedCombination(
            "plain hinge losses are excluded above order 1 by the two-forms characterization");
      }
      if (std::holds_alternative<ExpNegLoss>(loss.v())) {
        if (p.infinite) return typeinf_value(problem, beta);
        throw UnsupportedCombination("exponential loss is unbounded for finite ball orders");
      }
      throw UnsupportedCombination("loss '" + loss.describe() +
                                   "' is outside the reformulation catalog");
    }

    double operator()(const CVaRRisk&) const {
      if (p.infinite) return typeinf_value(problem, beta);
      if (p.p == 1.0) return infrep_reg_value(problem, beta);
      return distortion_reg_value(problem, beta);
    }
    double operator()(const CVaRDeviationRisk&) const {
      return distortion_reg_value(problem, beta);
    }
    double operator()(const DistortionRisk& r) const {
      if (r.h.is_convex()) return distortion_reg_value(problem, beta);
      if (p.infinite && risk_monotonicity(problem.risk) != Monotone::none)
        return typeinf_value(problem, beta);
      throw UnsupportedCombination("non-convex distortion is outside the catalog");
    }
    double operator()(const DistortionDeviationRisk&) const {
      return distortion_reg_value(problem, beta);
    }
    double operator()(const InfRepRisk&) const {
      if (p.infinite && risk_monotonicity(problem.risk) == Monotone::increasing)
        return typeinf_value(problem, beta);
      return infrep_reg_value(problem, beta);
    }
    double operator()(const InfRepDev&) const { return devrep_reg_value(problem, beta); }
    double operator()(const VarianceRisk&) const { return devrep_reg_value(problem, beta); }
  };

  return std::visit(Vis{problem, beta, p}, problem.risk);
}

}  // namespace wdro
