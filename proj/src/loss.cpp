#include "wdro/loss.hpp"

#include <cmath>
#include <stdexcept>

namespace wdro {

LossSpec::LossSpec(LinearLoss v) : v_(v) {
  if (!std::isfinite(v.slope) || !std::isfinite(v.intercept))
    throw std::invalid_argument("LinearLoss: non-finite parameter");
}

LossSpec::LossSpec(AbsoluteLoss v) : v_(v) {
  if (v.scale < 0.0) throw std::invalid_argument("AbsoluteLoss: scale must be >= 0");
}

LossSpec::LossSpec(HingePosLoss v) : v_(v) {}
LossSpec::LossSpec(HingeNegLoss v) : v_(v) {}

LossSpec::LossSpec(TwoSidedHingeLoss v) : v_(v) {
  if (v.m2 < 0.0) throw std::invalid_argument("TwoSidedHingeLoss: m2 must be >= 0");
}

LossSpec::LossSpec(ShiftedAbsLoss v) : v_(v) {
  if (!(v.b > 0.0)) throw std::invalid_argument("ShiftedAbsLoss: b must be > 0");
}

LossSpec::LossSpec(PowerLoss v) : v_(std::move(v)) {
  const auto& p = std::get<PowerLoss>(v_);
  if (!p.base) throw std::invalid_argument("PowerLoss: missing base");
  if (!(p.exponent >= 1.0)) throw std::invalid_argument("PowerLoss: exponent must be >= 1");
}

LossSpec::LossSpec(ExpNegLoss v) : v_(v) {
  if (!(v.rate > 0.0)) throw std::invalid_argument("ExpNegLoss: rate must be > 0");
}

LossSpec::LossSpec(CustomLoss v) : v_(std::move(v)) {
  if (!std::get<CustomLoss>(v_).fn) throw std::invalid_argument("CustomLoss: missing callable");
}

LossSpec LossSpec::power(LossSpec base, double exponent) {
  return LossSpec(PowerLoss{std::make_shared<const LossSpec>(std::move(base)), exponent});
}

double LossSpec::operator()(double x) const {
  struct Eval {
    double x;
    double operator()(const LinearLoss& l) const { return l.slope * x + l.intercept; }
    double operator()(const AbsoluteLoss& l) const {
      return l.scale * std::abs(x - l.center) + l.intercept;
    }
    double operator()(const HingePosLoss& l) const { return std::max(x - l.m, 0.0); }
    double operator()(const HingeNegLoss& l) const { return std::max(l.m - x, 0.0); }
    double operator()(const TwoSidedHingeLoss& l) const {
      return std::max(std::abs(x - l.m1) - l.m2, 0.0);
    }
    double operator()(const ShiftedAbsLoss& l) const { return std::abs(x - l.m) + l.b; }
    double operator()(const PowerLoss& l) const {
      const double base = (*l.base)(x);
      if (l.exponent == 1.0) return base;
      if (l.exponent == 2.0) return base * base;
      if (l.exponent == 3.0) return base * base * base;
      return std::pow(base, l.exponent);
    }
    double operator()(const ExpNegLoss& l) const { return std::exp(-l.rate * x) / l.rate; }
    double operator()(const CustomLoss& l) const { return l.fn(x); }
  };
  return std::visit(Eval{x}, v_);
}

bool LossSpec::convex() const {
  struct Vis {
    bool operator()(const LinearLoss&) const { return true; }
    bool operator()(const AbsoluteLoss&) const { return true; }
    bool operator()(const HingePosLoss&) const { return true; }
    bool operator()(const HingeNegLoss&) const { return true; }
    bool operator()(const TwoSidedHingeLoss&) const { return true; }
    bool operator()(const ShiftedAbsLoss&) const { return true; }
    bool operator()(const PowerLoss& l) const {
      // x -> base(x)^s is convex for convex nonnegative base and s >= 1
      return l.base->convex() && (l.exponent == 1.0 || l.base->nonnegative());
    }
    bool operator()(const ExpNegLoss&) const { return true; }
    bool operator()(const CustomLoss& l) const { return l.convex; }
  };
  return std::visit(Vis{}, v_);
}

bool LossSpec::nonnegative() const {
  struct Vis {
    bool operator()(const LinearLoss& l) const { return l.slope == 0.0 && l.intercept >= 0.0; }
    bool operator()(const AbsoluteLoss& l) const { return l.intercept >= 0.0; }
    bool operator()(const HingePosLoss&) const { return true; }
    bool operator()(const HingeNegLoss&) const { return true; }
    bool operator()(const TwoSidedHingeLoss&) const { return true; }
    bool operator()(const ShiftedAbsLoss&) const { return true; }
    bool operator()(const PowerLoss& l) const { return l.base->nonnegative(); }
    bool operator()(const ExpNegLoss&) const { return true; }
    bool operator()(const CustomLoss&) const { return false; }
  };
  return std::visit(Vis{}, v_);
}

Monotone LossSpec::monotonicity() const {
  struct Vis {
    Monotone operator()(const LinearLoss& l) const {
      return l.slope >= 0.0 ? Monotone::increasing : Monotone::decreasing;
    }
    Monotone operator()(const AbsoluteLoss& l) const {
      return l.scale == 0.0 ? Monotone::increasing : Monotone::none;
    }
    Monotone operator()(const HingePosLoss&) const { return Monotone::increasing; }
    Monotone operator()(const HingeNegLoss&) const { return Monotone::decreasing; }
    Monotone operator()(const TwoSidedHingeLoss&) const { return Monotone::none; }
    Monotone operator()(const ShiftedAbsLoss&) const { return Monotone::none; }
    Monotone operator()(const PowerLoss& l) const {
      // nonnegative base: powering preserves the direction
      return l.base->nonnegative() ? l.base->monotonicity() : Monotone::none;
    }
    Monotone operator()(const ExpNegLoss&) const { return Monotone::decreasing; }
    Monotone operator()(const CustomLoss&) const { return Monotone::none; }
  };
  return std::visit(Vis{}, v_);
}

std::optional<double> LossSpec::lipschitz() const {
  struct Vis {
    std::optional<double> operator()(const LinearLoss& l) const { return std::abs(l.slope); }
    std::optional<double> operator()(const AbsoluteLoss& l) const { return l.scale; }
    std::optional<double> operator()(const HingePosLoss&) const { return 1.0; }
    std::optional<double> operator()(const HingeNegLoss&) const { return 1.0; }
    std::optional<double> operator()(const TwoSidedHingeLoss&) const { return 1.0; }
    std::optional<double> operator()(const ShiftedAbsLoss&) const { return 1.0; }
    std::optional<double> operator()(const PowerLoss& l) const {
      if (l.exponent == 1.0) return l.base->lipschitz();
      return std::nullopt;  // unbounded slope
    }
    std::optional<double> operator()(const ExpNegLoss&) const { return std::nullopt; }
    std::optional<double> operator()(const CustomLoss& l) const { return l.lipschitz; }
  };
  return std::visit(Vis{}, v_);
}

double LossSpec::shift_bound() const {
  struct Vis {
    double operator()(const LinearLoss&) const { return 0.0; }
    double operator()(const AbsoluteLoss& l) const { return std::abs(l.center); }
    double operator()(const HingePosLoss& l) const { return std::abs(l.m); }
    double operator()(const HingeNegLoss& l) const { return std::abs(l.m); }
    double operator()(const TwoSidedHingeLoss& l) const { return std::abs(l.m1) + l.m2; }
    double operator()(const ShiftedAbsLoss& l) const { return std::abs(l.m) + l.b; }
    double operator()(const PowerLoss& l) const { return l.base->shift_bound(); }
    double operator()(const ExpNegLoss&) const { return 0.0; }
    double operator()(const CustomLoss&) const { return 0.0; }
  };
  return std::visit(Vis{}, v_);
}

std::string LossSpec::describe() const {
  struct Vis {
    std::string operator()(const LinearLoss&) const { return "linear"; }
    std::string operator()(const AbsoluteLoss&) const { return "absolute"; }
    std::string operator()(const HingePosLoss&) const { return "hinge_pos"; }
    std::string operator()(const HingeNegLoss&) const { return "hinge_neg"; }
    std::string operator()(const TwoSidedHingeLoss&) const { return "two_sided_hinge"; }
    std::string operator()(const ShiftedAbsLoss&) const { return "shifted_abs"; }
    std::string operator()(const PowerLoss& l) const {
      return l.base->describe() + "^" + std::to_string(l.exponent);
    }
    std::string operator()(const ExpNegLoss&) const { return "exp_neg"; }
    std::string operator()(const CustomLoss& l) const { return l.name; }
  };
  return std::visit(Vis{}, v_);
}

}  // namespace wdro
