#pragma once

#include <span>
#include <vector>

#include "wdro/distribution.hpp"

namespace wdro {

// Weighted sample of labelled points (y_i, x_i) with y_i in {-1,+1}. Pure
// regression / risk-minimization data carries all labels +1.
class LabelledDataset {
 public:
  LabelledDataset(std::vector<double> labels, std::vector<std::vector<double>> points,
                  std::vector<double> weights);

  // Equal weights 1/N.
  static LabelledDataset uniform(std::vector<double> labels,
                                 std::vector<std::vector<double>> points);

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return points_.front().size(); }
  const std::vector<double>& labels() const { return labels_; }
  const std::vector<std::vector<double>>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }

  double label_mass(double label) const;
  bool all_labels_positive() const;

 private:
  std::vector<double> labels_;
  std::vector<std::vector<double>> points_;
  std::vector<double> weights_;
};

// Per-row y_i * beta.x_i, in dataset row order (no sorting or merging).
std::vector<double> project_rows(const LabelledDataset& d, std::span<const double> beta);

// Pushforward distribution of Y * beta.X (canonicalized).
Empirical1D project_pushforward(const LabelledDataset& d, std::span<const double> beta);

}  // namespace wdro
