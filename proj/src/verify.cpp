#include "wdro/verify.hpp"

#include <cmath>
#include <cstdio>

#include "wdro/reform.hpp"
#include "wdro/rng.hpp"

namespace wdro {
namespace {

Empirical1D random_dist(Rng& rng, int max_atoms) {
  const int n = 2 + static_cast<int>(rng.uniform_int(static_cast<std::uint64_t>(max_atoms - 1)));
  std::vector<double> atoms(n), weights(n);
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    atoms[i] = rng.uniform(-2.0, 2.0);
    weights[i] = 0.1 + rng.uniform01();
    sum += weights[i];
  }
  for (double& w : weights) w /= sum;
  // renormalize the tail so the weights sum to one exactly enough
  double acc = 0.0;
  for (int i = 0; i + 1 < n; ++i) acc += weights[i];
  weights[n - 1] = 1.0 - acc;
  return Empirical1D(std::move(atoms), std::move(weights));
}

LabelledDataset random_data(Rng& rng, int rows, int dim, bool labels_pm) {
  std::vector<double> labels(rows);
  std::vector<std::vector<double>> points(rows, std::vector<double>(dim));
  for (int i = 0; i < rows; ++i) {
    labels[i] = labels_pm && rng.uniform01() < 0.5 ? -1.0 : 1.0;
    for (int j = 0; j < dim; ++j) points[i][static_cast<std::size_t>(j)] = rng.uniform(-1.5, 1.5);
  }
  return LabelledDataset::uniform(std::move(labels), std::move(points));
}

std::vector<double> random_beta(Rng& rng, int dim) {
  std::vector<double> beta(dim);
  for (double& b : beta) b = rng.uniform(-1.0, 1.0);
  if (std::abs(beta[0]) < 0.1) beta[0] = 0.5;
  return beta;
}

std::string fmt_short(double eps) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%g", eps);
  return buf;
}

struct Case {
  std::string name;
  RiskSpec risk;
  WOrder p;
};

}  // namespace

std::vector<VerifyRow> run_verify_suite(const VerifyOptions& opt) {
  std::vector<VerifyRow> rows;
  Rng rng(opt.seed);

  std::vector<Case> cases;
  cases.push_back({"lipschitz/linear/p2",
                   ExpectedLossRisk{LossSpec(LinearLoss{1.3, 0.4})}, WOrder::finite(2.0)});
  cases.push_back({"lipschitz/absolute/p1.5",
                   ExpectedLossRisk{LossSpec(AbsoluteLoss{0.3, 2.0, 0.1})}, WOrder::finite(1.5)});
  cases.push_back({"lipschitz/absolute/pinf",
                   ExpectedLossRisk{LossSpec(AbsoluteLoss{-0.2, 1.0, 0.0})}, WOrder::inf()});
  cases.push_back({"highorder/hinge_pos/p2",
                   ExpectedLossRisk{LossSpec::power(LossSpec(HingePosLoss{0.2}), 2.0)},
                   WOrder::finite(2.0)});
  cases.push_back({"highorder/two_sided/p2",
                   ExpectedLossRisk{LossSpec::power(LossSpec(TwoSidedHingeLoss{0.1, 0.3}), 2.0)},
                   WOrder::finite(2.0)});
  cases.push_back({"highorder/shifted_abs/p3",
                   ExpectedLossRisk{LossSpec::power(LossSpec(ShiftedAbsLoss{0.0, 0.5}), 3.0)},
                   WOrder::finite(3.0)});
  cases.push_back({"infrep/cvar/p1", CVaRRisk{0.8}, WOrder::finite(1.0)});
  cases.push_back({"infrep/higher_moment/p2",
                   InfRepRisk{LossSpec(HingePosLoss{0.0}), 2.0, 1.5, false}, WOrder::finite(2.0)});
  cases.push_back({"infrep/nu_svr/p1",
                   InfRepRisk{LossSpec(HingePosLoss{0.0}), 1.0, 4.0, true}, WOrder::finite(1.0)});
  cases.push_back({"devrep/variance/p2", VarianceRisk{}, WOrder::finite(2.0)});
  cases.push_back({"distortion/cvar_dev/p2", CVaRDeviationRisk{0.75}, WOrder::finite(2.0)});
  cases.push_back({"distortion/cvar/p2", CVaRRisk{0.7}, WOrder::finite(2.0)});
  cases.push_back({"typeinf/sum_exp", ExpectedLossRisk{LossSpec(ExpNegLoss{0.8})}, WOrder::inf()});
  cases.push_back({"typeinf/cvar", CVaRRisk{0.6}, WOrder::inf()});

  const double epsilons[] = {0.0, 0.3};
  for (const Case& c : cases) {
    for (double eps : epsilons) {
      for (int inst = 0; inst < opt.instances_per_clause; ++inst) {
        const LabelledDataset data = random_data(rng, 6, 2, true);
        const std::vector<double> beta = random_beta(rng, 2);
        const RobustProblem problem{data, c.risk, BallSpec{c.p, eps, L2Norm{}}, Task::risk_min};
        VerifyRow row;
        row.name = c.name + "/eps" + fmt_short(eps) + "/i" + std::to_string(inst);
        row.expected_negative = false;
        row.closed_form = robust_value(problem, beta);
        const Empirical1D proj = project_pushforward(data, beta);
        const double eps_eff = eps * dual_norm(beta, L2Norm{});
        row.numeric_sup = sup_risk_numeric(proj, c.p, eps_eff, c.risk, opt.oracle).value;
        row.abs_gap = std::abs(row.closed_form - row.numeric_sup);
        row.pass = row.abs_gap <= opt.tol * std::max(1.0, std::abs(row.closed_form));
        rows.push_back(std::move(row));
      }
    }
  }

  // falsification rows: no additive coefficient can explain the numeric sup
  {
    std::vector<std::pair<Empirical1D, double>> instances;
    for (int i = 0; i < 12; ++i)
      instances.emplace_back(random_dist(rng, 8), 0.25 + 0.25 * (i % 4));
    std::vector<double> c_grid(200);
    for (int i = 0; i < 200; ++i) c_grid[i] = 10.0 * i / 199.0;

    const LossSpec softplus(CustomLoss{
        [](double x) { return x > 30.0 ? x : std::log1p(std::exp(x)); }, 1.0, true, "softplus"});
    const FalsifyReport soft =
        falsify_equivalence(softplus, WOrder::finite(2.0), instances, c_grid, opt.oracle);
    rows.push_back({"falsify/softplus/p2", soft.best_c, soft.floor_value, soft.floor_value,
                    soft.floor_value <= opt.tol, true});

    const LossSpec mismatched = LossSpec::power(LossSpec(HingePosLoss{0.0}), 2.0);
    const FalsifyReport mism =
        falsify_equivalence(mismatched, WOrder::finite(3.0), instances, c_grid, opt.oracle);
    rows.push_back({"falsify/hinge_sq_p3", mism.best_c, mism.floor_value, mism.floor_value,
                    mism.floor_value <= opt.tol, true});

    const LossSpec control(AbsoluteLoss{0.0, 1.0, 0.0});
    const FalsifyReport ctrl =
        falsify_equivalence(control, WOrder::finite(2.0), instances, c_grid, opt.oracle);
    rows.push_back({"falsify/control_absolute", ctrl.best_c, ctrl.floor_value, ctrl.floor_value,
                    ctrl.floor_value <= opt.tol, false});
  }
  return rows;
}

}  // namespace wdro
