#include "wdro/risk.hpp"

#include <cmath>

#include "wdro/kernels.hpp"
#include "wdro/optim1d.hpp"

namespace wdro {
namespace {

// sum_i w_i * ell(u_i - t)^p, routed through the kernels for the closed
// catalog and a scalar loop otherwise.
double powered_loss_sum(const std::vector<double>& w, const std::vector<double>& u,
                        const LossSpec& ell, double t, double p) {
  const std::size_t n = u.size();
  const double* wp = w.data();
  const double* up = u.data();
  if (const auto* l = std::get_if<HingePosLoss>(&ell.v()))
    return kernels::hinge_pow_wsum(wp, up, t + l->m, p, n);
  if (const auto* l = std::get_if<HingeNegLoss>(&ell.v()))
    return kernels::rhinge_pow_wsum(wp, up, t + l->m, p, n);
  if (const auto* l = std::get_if<TwoSidedHingeLoss>(&ell.v()))
    return kernels::tshinge_pow_wsum(wp, up, t + l->m1, l->m2, p, n);
  if (const auto* l = std::get_if<ShiftedAbsLoss>(&ell.v()))
    return kernels::tshinge_pow_wsum(wp, up, t + l->m, -l->b, p, n);
  if (const auto* l = std::get_if<AbsoluteLoss>(&ell.v())) {
    if (l->scale == 1.0 && l->intercept == 0.0)
      return kernels::tshinge_pow_wsum(wp, up, t + l->center, 0.0, p, n);
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::pow(ell(u[i] - t), p);
  return acc;
}

void check_inf_rep_loss(const LossSpec& ell, double order) {
  if (!(order >= 1.0) || std::isinf(order))
    throw std::invalid_argument("inf_rep: order must be finite and >= 1");
  if (!ell.convex()) throw std::invalid_argument("inf_rep: loss must be convex");
  if (order > 1.0 && !ell.nonnegative())
    throw std::invalid_argument("inf_rep: powered loss needs a nonnegative base");
}

InfRepResult minimize_over_t(const std::vector<double>& u, const LossSpec& ell,
                             const std::function<double(double)>& wrap) {
  double lo = u.front(), hi = u.front();
  for (double x : u) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  const double range = hi - lo;
  const double span = range + ell.shift_bound() + 1.0;
  const double tol = 1e-10 * (1.0 + range);
  auto [t, value] = minimize_convex_1d(wrap, lo - span, hi + span, tol);
  return {value, t};
}

}  // namespace

double eval_expected_loss(const Empirical1D& dist, const LossSpec& loss) {
  const auto& z = dist.atoms();
  const auto& w = dist.weights();
  const std::size_t n = z.size();
  double out;

  if (const auto* l = std::get_if<LinearLoss>(&loss.v())) {
    out = l->slope * kernels::dot(w.data(), z.data(), n) + l->intercept;
  } else if (const auto* l = std::get_if<AbsoluteLoss>(&loss.v())) {
    out = l->scale * kernels::tshinge_pow_wsum(w.data(), z.data(), l->center, 0.0, 1.0, n) +
          l->intercept;
  } else if (const auto* l = std::get_if<HingePosLoss>(&loss.v())) {
    out = kernels::hinge_pow_wsum(w.data(), z.data(), l->m, 1.0, n);
  } else if (const auto* l = std::get_if<HingeNegLoss>(&loss.v())) {
    out = kernels::rhinge_pow_wsum(w.data(), z.data(), l->m, 1.0, n);
  } else if (const auto* l = std::get_if<TwoSidedHingeLoss>(&loss.v())) {
    out = kernels::tshinge_pow_wsum(w.data(), z.data(), l->m1, l->m2, 1.0, n);
  } else if (const auto* l = std::get_if<ShiftedAbsLoss>(&loss.v())) {
    out = kernels::tshinge_pow_wsum(w.data(), z.data(), l->m, 0.0, 1.0, n) + l->b;
  } else if (const auto* l = std::get_if<PowerLoss>(&loss.v())) {
    const double s = l->exponent;
    const LossSpec& base = *l->base;
    if (const auto* b = std::get_if<HingePosLoss>(&base.v())) {
      out = kernels::hinge_pow_wsum(w.data(), z.data(), b->m, s, n);
    } else if (const auto* b = std::get_if<HingeNegLoss>(&base.v())) {
      out = kernels::rhinge_pow_wsum(w.data(), z.data(), b->m, s, n);
    } else if (const auto* b = std::get_if<TwoSidedHingeLoss>(&base.v())) {
      out = kernels::tshinge_pow_wsum(w.data(), z.data(), b->m1, b->m2, s, n);
    } else if (const auto* b = std::get_if<ShiftedAbsLoss>(&base.v())) {
      out = kernels::tshinge_pow_wsum(w.data(), z.data(), b->m, -b->b, s, n);
    } else if (const auto* b = std::get_if<AbsoluteLoss>(&base.v());
               b && b->scale == 1.0 && b->intercept == 0.0) {
      out = kernels::tshinge_pow_wsum(w.data(), z.data(), b->center, 0.0, s, n);
    } else {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += w[i] * std::pow(base(z[i]), s);
      out = acc;
    }
  } else {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += w[i] * loss(z[i]);
    out = acc;
  }

  if (!std::isfinite(out))
    throw EvalError("expected loss is not finite for loss " + loss.describe());
  return out;
}

double eval_cvar(const Empirical1D& dist, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("cvar: alpha must be in (0,1)");
  const auto& z = dist.atoms();
  const auto& w = dist.weights();
  const std::size_t n = z.size();

  double cum = 0.0;
  std::size_t i = 0;
  for (; i < n; ++i) {
    cum += w[i];
    if (cum > alpha) break;
  }
  if (i == n) {  // cumulative rounding shortfall
    i = n - 1;
    cum = 1.0;
  }
  double tail = (cum - alpha) * z[i];
  for (std::size_t j = i + 1; j < n; ++j) tail += w[j] * z[j];
  return tail / (1.0 - alpha);
}

double eval_distortion(const Empirical1D& dist, const DistortionSpec& h) {
  const auto& z = dist.atoms();
  const auto& w = dist.weights();
  const std::size_t n = z.size();
  double acc = 0.0;
  double f_prev = 0.0, h_prev = h(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double f = (i + 1 == n) ? 1.0 : f_prev + w[i];
    const double h_cur = h(f);
    acc += z[i] * (h_cur - h_prev);
    f_prev = f;
    h_prev = h_cur;
  }
  return acc;
}

InfRepResult eval_inf_rep(const Empirical1D& dist, const InfRepRisk& spec) {
  check_inf_rep_loss(spec.ell, spec.order);
  if (!(spec.scale >= 1.0)) throw std::invalid_argument("inf_rep: scale must be >= 1");

  std::vector<double> u = dist.atoms();
  if (spec.abs_arg)
    for (double& x : u) x = std::abs(x);
  const auto& w = dist.weights();
  const double inv_p = 1.0 / spec.order;
  auto objective = [&](double t) {
    return t + spec.scale * std::pow(powered_loss_sum(w, u, spec.ell, t, spec.order), inv_p);
  };
  return minimize_over_t(u, spec.ell, objective);
}

InfRepResult eval_inf_rep(const Empirical1D& dist, const InfRepDev& spec) {
  check_inf_rep_loss(spec.ell, spec.order);
  const std::vector<double>& u = dist.atoms();
  const auto& w = dist.weights();
  auto objective = [&](double t) { return powered_loss_sum(w, u, spec.ell, t, spec.order); };
  return minimize_over_t(u, spec.ell, objective);
}

Empirical1D abs_transform(const Empirical1D& dist) {
  std::vector<double> atoms = dist.atoms();
  for (double& x : atoms) x = std::abs(x);
  return Empirical1D(std::move(atoms), dist.weights());
}

double eval_risk(const Empirical1D& dist, const RiskSpec& risk) {
  struct Vis {
    const Empirical1D& d;
    double operator()(const ExpectedLossRisk& r) const { return eval_expected_loss(d, r.loss); }
    double operator()(const CVaRRisk& r) const { return eval_cvar(d, r.alpha); }
    double operator()(const CVaRDeviationRisk& r) const {
      return eval_cvar(d.shifted(-d.mean()), r.alpha);
    }
    double operator()(const DistortionRisk& r) const {
      return eval_distortion(r.on_abs ? abs_transform(d) : d, r.h);
    }
    double operator()(const DistortionDeviationRisk& r) const {
      return eval_distortion(d.shifted(-d.mean()), r.h);
    }
    double operator()(const InfRepRisk& r) const { return eval_inf_rep(d, r).value; }
    double operator()(const InfRepDev& r) const { return eval_inf_rep(d, r).value; }
    double operator()(const VarianceRisk&) const {
      return eval_inf_rep(d, InfRepDev{LossSpec(AbsoluteLoss{0.0, 1.0, 0.0}), 2.0}).value;
    }
  };
  return std::visit(Vis{dist}, risk);
}

Monotone risk_monotonicity(const RiskSpec& risk) {
  struct Vis {
    Monotone operator()(const ExpectedLossRisk& r) const { return r.loss.monotonicity(); }
    Monotone operator()(const CVaRRisk&) const { return Monotone::increasing; }
    Monotone operator()(const CVaRDeviationRisk&) const { return Monotone::none; }
    Monotone operator()(const DistortionRisk& r) const {
      if (r.on_abs) return Monotone::none;
      return r.h.is_increasing() ? Monotone::increasing : Monotone::none;
    }
    Monotone operator()(const DistortionDeviationRisk&) const { return Monotone::none; }
    Monotone operator()(const InfRepRisk& r) const {
      if (r.abs_arg) return Monotone::none;
      if (std::holds_alternative<HingePosLoss>(r.ell.v())) return Monotone::increasing;
      return Monotone::none;
    }
    Monotone operator()(const InfRepDev&) const { return Monotone::none; }
    Monotone operator()(const VarianceRisk&) const { return Monotone::none; }
  };
  return std::visit(Vis{}, risk);
}

}  // namespace wdro
