#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>

namespace wdro {

class LossSpec;

// slope*x + intercept
struct LinearLoss {
  double slope;
  double intercept = 0.0;
};

// scale*|x - center| + intercept, scale >= 0
struct AbsoluteLoss {
  double center;
  double scale = 1.0;
  double intercept = 0.0;
};

// (x - m)+
struct HingePosLoss {
  double m;
};

// (x - m)- = max(m - x, 0)
struct HingeNegLoss {
  double m;
};

// (|x - m1| - m2)+, m2 >= 0
struct TwoSidedHingeLoss {
  double m1;
  double m2;
};

// |x - m| + b, b > 0
struct ShiftedAbsLoss {
  double m;
  double b;
};

// base(x)^exponent, exponent >= 1
struct PowerLoss {
  std::shared_ptr<const LossSpec> base;
  double exponent;
};

// (1/rate) * exp(-rate*x), rate > 0
struct ExpNegLoss {
  double rate;
};

// User-supplied pointwise loss. The declared Lipschitz constant and convexity
// flag are consumed by the numeric oracle only; the closed-form reformulation
// layer never trusts them.
struct CustomLoss {
  std::function<double(double)> fn;
  double lipschitz;
  bool convex;
  std::string name = "custom";
};

enum class Monotone { increasing, decreasing, none };

class LossSpec {
 public:
  using Variant = std::variant<LinearLoss, AbsoluteLoss, HingePosLoss, HingeNegLoss,
                               TwoSidedHingeLoss, ShiftedAbsLoss, PowerLoss, ExpNegLoss, CustomLoss>;

  LossSpec(LinearLoss v);
  LossSpec(AbsoluteLoss v);
  LossSpec(HingePosLoss v);
  LossSpec(HingeNegLoss v);
  LossSpec(TwoSidedHingeLoss v);
  LossSpec(ShiftedAbsLoss v);
  LossSpec(PowerLoss v);
  LossSpec(ExpNegLoss v);
  LossSpec(CustomLoss v);

  static LossSpec power(LossSpec base, double exponent);

  const Variant& v() const { return v_; }

  double operator()(double x) const;
  bool convex() const;
  bool nonnegative() const;  // conservatively false when not provable
  Monotone monotonicity() const;
  // Analytic Lipschitz constant where the form implies one; CustomLoss
  // reports its declared constant.
  std::optional<double> lipschitz() const;
  // Bound on the magnitude of internal offsets (m, m1, m2, b); used to size
  // search brackets.
  double shift_bound() const;
  std::string describe() const;

 private:
  Variant v_;
};

}  // namespace wdro
