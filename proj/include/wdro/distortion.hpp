#pragma once

#include <functional>
#include <vector>

#include "wdro/order.hpp"

namespace wdro {

// Piecewise-linear distortion function h on [0,1], stored on a knot grid
// 0 = s_0 < s_1 < ... < s_K = 1. Convexity and monotonicity are computed from
// the segment slopes, not taken on trust. Smooth h must be pre-sampled on a
// grid; that keeps the Stieltjes sums and the q-norm of h'_- exact.
class DistortionSpec {
 public:
  DistortionSpec(std::vector<double> knots, std::vector<double> values);

  // h(s) = (s - alpha)+ / (1 - alpha); the CVaR_alpha distortion.
  static DistortionSpec cvar(double alpha);
  // h(s) = s; the mean.
  static DistortionSpec identity();
  // Sample h on a uniform grid with `segments` pieces.
  static DistortionSpec sample(const std::function<double(double)>& h, int segments);

  const std::vector<double>& knots() const { return knots_; }
  const std::vector<double>& values() const { return values_; }
  // Left-derivative h'_- on segment k, i.e. on (knots[k], knots[k+1]].
  const std::vector<double>& slopes() const { return slopes_; }

  double operator()(double s) const;  // piecewise-linear interpolation
  double h0() const { return values_.front(); }
  double h1() const { return values_.back(); }

  bool is_convex() const { return convex_; }
  bool is_increasing() const { return increasing_; }

  // (sum_k |h'_k + shift|^q ds_k)^{1/q}; max_k |h'_k + shift| when q = inf.
  double slope_norm(WOrder q, double shift = 0.0) const;

 private:
  std::vector<double> knots_;
  std::vector<double> values_;
  std::vector<double> slopes_;
  bool convex_ = false;
  bool increasing_ = false;
};

}  // namespace wdro
