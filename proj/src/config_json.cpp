#include "wdro/config_json.hpp"

#include <cstdio>
#include <stdexcept>

namespace wdro {

using nlohmann::json;

void check_keys(const json& obj, std::initializer_list<const char*> allowed,
                const std::string& context) {
  if (!obj.is_object()) throw std::invalid_argument(context + ": expected an object");
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        ok = true;
        break;
      }
    if (!ok) throw std::invalid_argument(context + ": unknown key '" + item.key() + "'");
  }
}

namespace {

std::string kind_of(const json& j, const std::string& context) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument(context + ": expected an object with a 'kind' field");
  return j.at("kind").get<std::string>();
}

}  // namespace

LossSpec loss_from_json(const json& j) {
  const std::string kind = kind_of(j, "loss");
  if (kind == "linear") {
    check_keys(j, {"kind", "slope", "intercept"}, "loss.linear");
    return LossSpec(LinearLoss{j.at("slope").get<double>(), j.value("intercept", 0.0)});
  }
  if (kind == "absolute") {
    check_keys(j, {"kind", "center", "scale", "intercept"}, "loss.absolute");
    return LossSpec(AbsoluteLoss{j.value("center", 0.0), j.value("scale", 1.0),
                                 j.value("intercept", 0.0)});
  }
  if (kind == "hinge_pos") {
    check_keys(j, {"kind", "m"}, "loss.hinge_pos");
    return LossSpec(HingePosLoss{j.value("m", 0.0)});
  }
  if (kind == "hinge_neg") {
    check_keys(j, {"kind", "m"}, "loss.hinge_neg");
    return LossSpec(HingeNegLoss{j.value("m", 0.0)});
  }
  if (kind == "two_sided_hinge") {
    check_keys(j, {"kind", "m1", "m2"}, "loss.two_sided_hinge");
    return LossSpec(TwoSidedHingeLoss{j.value("m1", 0.0), j.value("m2", 0.0)});
  }
  if (kind == "shifted_abs") {
    check_keys(j, {"kind", "m", "b"}, "loss.shifted_abs");
    return LossSpec(ShiftedAbsLoss{j.value("m", 0.0), j.at("b").get<double>()});
  }
  if (kind == "power") {
    check_keys(j, {"kind", "base", "exponent"}, "loss.power");
    return LossSpec::power(loss_from_json(j.at("base")), j.at("exponent").get<double>());
  }
  if (kind == "exp_neg") {
    check_keys(j, {"kind", "rate"}, "loss.exp_neg");
    return LossSpec(ExpNegLoss{j.at("rate").get<double>()});
  }
  throw std::invalid_argument("loss: unknown kind '" + kind + "'");
}

namespace {

DistortionSpec distortion_from_json(const json& j, const std::string& context) {
  if (!j.contains("knots") || !j.contains("values"))
    throw std::invalid_argument(context + ": needs 'knots' and 'values'");
  return DistortionSpec(j.at("knots").get<std::vector<double>>(),
                        j.at("values").get<std::vector<double>>());
}

}  // namespace

RiskSpec risk_from_json(const json& j) {
  const std::string kind = kind_of(j, "risk");
  if (kind == "expected_loss") {
    check_keys(j, {"kind", "loss"}, "risk.expected_loss");
    return ExpectedLossRisk{loss_from_json(j.at("loss"))};
  }
  if (kind == "cvar") {
    check_keys(j, {"kind", "alpha"}, "risk.cvar");
    return CVaRRisk{j.at("alpha").get<double>()};
  }
  if (kind == "cvar_deviation") {
    check_keys(j, {"kind", "alpha"}, "risk.cvar_deviation");
    return CVaRDeviationRisk{j.at("alpha").get<double>()};
  }
  if (kind == "distortion") {
    check_keys(j, {"kind", "knots", "values", "on_abs"}, "risk.distortion");
    return DistortionRisk{distortion_from_json(j, "risk.distortion"), j.value("on_abs", false)};
  }
  if (kind == "distortion_deviation") {
    check_keys(j, {"kind", "knots", "values"}, "risk.distortion_deviation");
    return DistortionDeviationRisk{distortion_from_json(j, "risk.distortion_deviation")};
  }
  if (kind == "inf_rep_risk") {
    check_keys(j, {"kind", "loss", "order", "scale", "abs_arg"}, "risk.inf_rep_risk");
    return InfRepRisk{loss_from_json(j.at("loss")), j.at("order").get<double>(),
                      j.at("scale").get<double>(), j.value("abs_arg", false)};
  }
  if (kind == "inf_rep_dev") {
    check_keys(j, {"kind", "loss", "order"}, "risk.inf_rep_dev");
    return InfRepDev{loss_from_json(j.at("loss")), j.at("order").get<double>()};
  }
  if (kind == "variance") {
    check_keys(j, {"kind"}, "risk.variance");
    return VarianceRisk{};
  }
  throw std::invalid_argument("risk: unknown kind '" + kind + "'");
}

NormSpec norm_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "l1") return L1Norm{};
    if (s == "l2") return L2Norm{};
    if (s == "linf") return LinfNorm{};
    throw std::invalid_argument("norm: unknown name '" + s + "'");
  }
  const std::string kind = kind_of(j, "norm");
  if (kind == "weighted_l2") {
    check_keys(j, {"kind", "weights"}, "norm.weighted_l2");
    return WeightedL2Norm{j.at("weights").get<std::vector<double>>()};
  }
  throw std::invalid_argument("norm: unknown kind '" + kind + "'");
}

WOrder order_from_json(const json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "infinity") return WOrder::inf();
    throw std::invalid_argument("order: unknown string '" + s + "'");
  }
  return WOrder::finite(j.get<double>());
}

BallSpec ball_from_json(const json& j) {
  check_keys(j, {"p", "epsilon", "norm"}, "ball");
  BallSpec ball;
  ball.p = order_from_json(j.at("p"));
  ball.epsilon = j.at("epsilon").get<double>();
  if (ball.epsilon < 0.0) throw std::invalid_argument("ball: epsilon must be >= 0");
  ball.norm = j.contains("norm") ? norm_from_json(j.at("norm")) : NormSpec{L2Norm{}};
  return ball;
}

DecisionSet decision_set_from_json(const json& j) {
  const std::string kind = kind_of(j, "decision_set");
  if (kind == "norm_ball") {
    check_keys(j, {"kind", "radius"}, "decision_set.norm_ball");
    return DecisionSet(NormBallSet{j.at("radius").get<double>()});
  }
  if (kind == "annulus") {
    check_keys(j, {"kind", "lo", "hi"}, "decision_set.annulus");
    return DecisionSet(AnnulusSet{j.at("lo").get<double>(), j.at("hi").get<double>()});
  }
  if (kind == "box") {
    check_keys(j, {"kind", "lo", "hi"}, "decision_set.box");
    return DecisionSet(BoxSet{j.at("lo").get<std::vector<double>>(),
                              j.at("hi").get<std::vector<double>>()});
  }
  if (kind == "finite") {
    check_keys(j, {"kind", "candidates"}, "decision_set.finite");
    return DecisionSet(FiniteSet{j.at("candidates").get<std::vector<std::vector<double>>>()});
  }
  if (kind == "fixed_first") {
    check_keys(j, {"kind", "inner"}, "decision_set.fixed_first");
    return DecisionSet(FixedFirstCoordinate{
        std::make_shared<const DecisionSet>(decision_set_from_json(j.at("inner")))});
  }
  throw std::invalid_argument("decision_set: unknown kind '" + kind + "'");
}

Task task_from_string(const std::string& s) {
  if (s == "classify" || s == "classification") return Task::classification;
  if (s == "regress" || s == "regression") return Task::regression;
  if (s == "riskmin" || s == "risk_min") return Task::risk_min;
  throw std::invalid_argument("task: unknown value '" + s + "'");
}

SolveRunConfig parse_solve_config(const json& j) {
  check_keys(j, {"task", "risk", "ball", "decision_set", "solver", "seed"}, "config");
  if (!j.contains("risk") || !j.contains("ball") || !j.contains("decision_set"))
    throw std::invalid_argument("config: 'risk', 'ball' and 'decision_set' are required");

  SolveRunConfig cfg{Task::risk_min,
                     false,
                     risk_from_json(j.at("risk")),
                     ball_from_json(j.at("ball")),
                     decision_set_from_json(j.at("decision_set")),
                     SolverConfig{},
                     1};
  if (j.contains("task")) {
    cfg.task = task_from_string(j.at("task").get<std::string>());
    cfg.task_set = true;
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    check_keys(s, {"iters", "restarts", "step0", "grid_per_dim"}, "solver");
    cfg.solver.iters = s.value("iters", cfg.solver.iters);
    cfg.solver.restarts = s.value("restarts", cfg.solver.restarts);
    cfg.solver.step0 = s.value("step0", cfg.solver.step0);
    cfg.solver.grid_per_dim = s.value("grid_per_dim", cfg.solver.grid_per_dim);
  }
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.solver.seed = cfg.seed;
  return cfg;
}

CoverageConfig parse_coverage_config(const json& j) {
  check_keys(j,
             {"dim", "train_size", "trials", "holdout_size", "eps_grid", "alpha", "ball_p",
              "feature_mean", "set_lo", "set_hi", "seed", "solver_iters", "solver_restarts"},
             "coverage config");
  CoverageConfig cfg;
  cfg.dim = j.value("dim", cfg.dim);
  cfg.train_size = j.value("train_size", cfg.train_size);
  cfg.trials = j.value("trials", cfg.trials);
  cfg.holdout_size = j.value("holdout_size", cfg.holdout_size);
  if (j.contains("eps_grid")) cfg.eps_grid = j.at("eps_grid").get<std::vector<double>>();
  cfg.alpha = j.value("alpha", cfg.alpha);
  if (j.contains("ball_p")) cfg.ball_p = order_from_json(j.at("ball_p"));
  if (j.contains("feature_mean"))
    cfg.feature_mean = j.at("feature_mean").get<std::vector<double>>();
  cfg.set_lo = j.value("set_lo", cfg.set_lo);
  cfg.set_hi = j.value("set_hi", cfg.set_hi);
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.solver_iters = j.value("solver_iters", cfg.solver_iters);
  cfg.solver_restarts = j.value("solver_restarts", cfg.solver_restarts);
  return cfg;
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace wdro
