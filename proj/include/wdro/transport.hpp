#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wdro/dataset.hpp"
#include "wdro/distribution.hpp"
#include "wdro/norms.hpp"
#include "wdro/order.hpp"

namespace wdro {

struct BallSpec {
  WOrder p;
  double epsilon = 0.0;  // >= 0
  NormSpec norm = L2Norm{};
};

// Exact type-p distance between finitely supported distributions on the line
// via the monotone quantile coupling; the max quantile gap when p = inf.
double wasserstein_1d(const Empirical1D& f, const Empirical1D& g, WOrder p);

struct CompositeDistance {
  double value;
  bool exact;  // false when only the coupling upper bound was computed
};

// Type-p transport distance under the labelled ground metric that charges
// label flips infinitely: +inf when the label-class masses differ, otherwise
// transport restricted within each class. Exact for 1-D features and for
// equal-weight classes of up to 12 points (assignment); larger instances get
// a coupling upper bound, flagged.
CompositeDistance composite_distance(const LabelledDataset& a, const LabelledDataset& b, WOrder p,
                                     const NormSpec& norm);

// Lift a 1-D perturbation of the projection back to feature space along the
// dual-norm maximizer: x_i' = x_i + b0 * t[i] / (y_i * ||beta||_*). The lifted
// dataset projects exactly onto proj + t and sits within
// (sum w |t|^p)^{1/p} / ||beta||_* of the original in composite distance.
LabelledDataset lift_to_ball(const LabelledDataset& d0, std::span<const double> beta,
                             const NormSpec& norm, std::span<const double> t);

struct MembershipReport {
  int trials = 0;
  int pass_pushforward = 0;
  int pass_lift = 0;
  std::vector<std::string> failures;
  bool all_passed() const { return pass_pushforward == trials && pass_lift == trials; }
};

// Randomized check of the ball-projection identity: datasets perturbed within
// the big ball project into the small ball, and 1-D targets in the small ball
// lift into the big ball (slack 1e-9 both ways).
MembershipReport projection_membership_check(const LabelledDataset& d0,
                                             std::span<const double> beta, const BallSpec& ball,
                                             int trials, std::uint64_t seed);

}  // namespace wdro
