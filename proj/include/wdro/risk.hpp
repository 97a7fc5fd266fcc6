#pragma once

#include <stdexcept>
#include <variant>

#include "wdro/distortion.hpp"
#include "wdro/distribution.hpp"
#include "wdro/loss.hpp"

namespace wdro {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExpectedLossRisk {
  LossSpec loss;
};

struct CVaRRisk {
  double alpha;  // in (0,1)
};

// CVaR_alpha(Z - E[Z])
struct CVaRDeviationRisk {
  double alpha;
};

// rho_h(Z), or rho_h(|Z|) when on_abs is set (the nu-SVR style composition)
struct DistortionRisk {
  DistortionSpec h;
  bool on_abs = false;
};

// rho_h(Z - E[Z])
struct DistortionDeviationRisk {
  DistortionSpec h;
};

// inf_t { t + scale * (E[ loss(u - t)^order ])^{1/order} }  with u = |Z| when
// abs_arg is set and u = Z otherwise. CVaR_alpha is loss=(x)+ with order=1,
// scale=1/(1-alpha); higher-moment coherent risk is order>1.
struct InfRepRisk {
  LossSpec ell;
  double order;  // in [1, inf)
  double scale;  // >= 1
  bool abs_arg = false;
};

// inf_t E[ loss(Z - t)^order ]; variance is loss=|x|, order=2.
struct InfRepDev {
  LossSpec ell;
  double order;
};

struct VarianceRisk {};

using RiskSpec = std::variant<ExpectedLossRisk, CVaRRisk, CVaRDeviationRisk, DistortionRisk,
                              DistortionDeviationRisk, InfRepRisk, InfRepDev, VarianceRisk>;

// E[loss(Z)]; throws EvalError on non-finite terms (e.g. ExpNeg overflow).
double eval_expected_loss(const Empirical1D& dist, const LossSpec& loss);

// (1/(1-alpha)) * integral_alpha^1 of the left quantile; exact on atoms with
// a fractional atom at level alpha.
double eval_cvar(const Empirical1D& dist, double alpha);

// Stieltjes sum over the sorted atoms: sum_i z_(i) (h(F_i) - h(F_{i-1})).
double eval_distortion(const Empirical1D& dist, const DistortionSpec& h);

struct InfRepResult {
  double value;
  double minimizer;
};

InfRepResult eval_inf_rep(const Empirical1D& dist, const InfRepRisk& spec);
InfRepResult eval_inf_rep(const Empirical1D& dist, const InfRepDev& spec);

double eval_risk(const Empirical1D& dist, const RiskSpec& risk);

// Whether the risk functional is monotone in the a.s. order (drives the
// type-infinity shift formula).
Monotone risk_monotonicity(const RiskSpec& risk);

// |Z| pushforward (atoms replaced by their absolute values, re-canonicalized).
Empirical1D abs_transform(const Empirical1D& dist);

}  // namespace wdro
