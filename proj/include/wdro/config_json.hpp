#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "wdro/genbound.hpp"
#include "wdro/solver.hpp"

namespace wdro {

// Schema-checked parsers; unknown keys are rejected so that typos fail loudly
// before any computation starts.
void check_keys(const nlohmann::json& obj, std::initializer_list<const char*> allowed,
                const std::string& context);

LossSpec loss_from_json(const nlohmann::json& j);
RiskSpec risk_from_json(const nlohmann::json& j);
NormSpec norm_from_json(const nlohmann::json& j);
WOrder order_from_json(const nlohmann::json& j);
BallSpec ball_from_json(const nlohmann::json& j);
DecisionSet decision_set_from_json(const nlohmann::json& j);
Task task_from_string(const std::string& s);

struct SolveRunConfig {
  Task task = Task::risk_min;
  bool task_set = false;
  RiskSpec risk;
  BallSpec ball;
  DecisionSet set;
  SolverConfig solver;
  std::uint64_t seed = 1;
};

SolveRunConfig parse_solve_config(const nlohmann::json& j);
CoverageConfig parse_coverage_config(const nlohmann::json& j);

// 17-significant-digit decimal form, stable across runs.
std::string fmt17(double x);

}  // namespace wdro
