#include "wdro/distortion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wdro {

DistortionSpec::DistortionSpec(std::vector<double> knots, std::vector<double> values)
    : knots_(std::move(knots)), values_(std::move(values)) {
  if (knots_.size() != values_.size() || knots_.size() < 2)
    throw std::invalid_argument("DistortionSpec: need matching knots/values, at least two");
  if (knots_.front() != 0.0 || knots_.back() != 1.0)
    throw std::invalid_argument("DistortionSpec: knots must start at 0 and end at 1");
  for (std::size_t k = 1; k < knots_.size(); ++k)
    if (!(knots_[k] > knots_[k - 1]))
      throw std::invalid_argument("DistortionSpec: knots must be strictly increasing");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("DistortionSpec: non-finite value");

  slopes_.resize(knots_.size() - 1);
  for (std::size_t k = 0; k + 1 < knots_.size(); ++k)
    slopes_[k] = (values_[k + 1] - values_[k]) / (knots_[k + 1] - knots_[k]);

  convex_ = true;
  increasing_ = true;
  for (std::size_t k = 0; k < slopes_.size(); ++k) {
    if (slopes_[k] < -1e-12) increasing_ = false;
    if (k > 0 && slopes_[k] < slopes_[k - 1] - 1e-12) convex_ = false;
  }
}

DistortionSpec DistortionSpec::cvar(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw std::invalid_argument("cvar distortion: alpha must be in (0,1)");
  return DistortionSpec({0.0, alpha, 1.0}, {0.0, 0.0, 1.0});
}

DistortionSpec DistortionSpec::identity() { return DistortionSpec({0.0, 1.0}, {0.0, 1.0}); }

DistortionSpec DistortionSpec::sample(const std::function<double(double)>& h, int segments) {
  if (segments < 1) throw std::invalid_argument("DistortionSpec::sample: need >= 1 segment");
  std::vector<double> knots(segments + 1), values(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    knots[k] = static_cast<double>(k) / segments;
    values[k] = h(knots[k]);
  }
  knots.front() = 0.0;
  knots.back() = 1.0;
  return DistortionSpec(std::move(knots), std::move(values));
}

double DistortionSpec::operator()(double s) const {
  if (s <= 0.0) return values_.front();
  if (s >= 1.0) return values_.back();
  const auto it = std::upper_bound(knots_.begin(), knots_.end(), s);
  const std::size_t k = static_cast<std::size_t>(it - knots_.begin()) - 1;
  return values_[k] + slopes_[k] * (s - knots_[k]);
}

double DistortionSpec::slope_norm(WOrder q, double shift) const {
  if (q.infinite) {
    double m = 0.0;
    for (double g : slopes_) m = std::max(m, std::abs(g + shift));
    return m;
  }
  double acc = 0.0;
  for (std::size_t k = 0; k < slopes_.size(); ++k) {
    const double ds = knots_[k + 1] - knots_[k];
    acc += std::pow(std::abs(slopes_[k] + shift), q.p) * ds;
  }
  return std::pow(acc, 1.0 / q.p);
}

}  // namespace wdro
