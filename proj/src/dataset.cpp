#include "wdro/dataset.hpp"

#include <cmath>
#include <stdexcept>

#include "wdro/kernels.hpp"

namespace wdro {

LabelledDataset::LabelledDataset(std::vector<double> labels,
                                 std::vector<std::vector<double>> points,
                                 std::vector<double> weights)
    : labels_(std::move(labels)), points_(std::move(points)), weights_(std::move(weights)) {
  const std::size_t n = labels_.size();
  if (n == 0) throw std::invalid_argument("LabelledDataset: empty");
  if (points_.size() != n || weights_.size() != n)
    throw std::invalid_argument("LabelledDataset: size mismatch");
  const std::size_t dim = points_.front().size();
  if (dim == 0) throw std::invalid_argument("LabelledDataset: zero-dimensional points");
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_[i] != 1.0 && labels_[i] != -1.0)
      throw std::invalid_argument("LabelledDataset: labels must be -1 or +1");
    if (points_[i].size() != dim)
      throw std::invalid_argument("LabelledDataset: ragged point dimensions");
    for (double v : points_[i])
      if (!std::isfinite(v)) throw std::invalid_argument("LabelledDataset: non-finite feature");
    if (!(weights_[i] > 0.0))
      throw std::invalid_argument("LabelledDataset: weights must be positive");
    sum += weights_[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("LabelledDataset: weights must sum to 1 within 1e-12");
}

LabelledDataset LabelledDataset::uniform(std::vector<double> labels,
                                         std::vector<std::vector<double>> points) {
  const std::size_t n = labels.size();
  std::vector<double> w(n, n > 0 ? 1.0 / static_cast<double>(n) : 0.0);
  return LabelledDataset(std::move(labels), std::move(points), std::move(w));
}

double LabelledDataset::label_mass(double label) const {
  double m = 0.0;
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) m += weights_[i];
  return m;
}

bool LabelledDataset::all_labels_positive() const {
  for (double y : labels_)
    if (y != 1.0) return false;
  return true;
}

std::vector<double> project_rows(const LabelledDataset& d, std::span<const double> beta) {
  if (beta.size() != d.dim()) throw std::invalid_argument("project: beta dimension mismatch");
  std::vector<double> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i)
    out[i] = d.labels()[i] * kernels::dot(d.points()[i].data(), beta.data(), beta.size());
  return out;
}

Empirical1D project_pushforward(const LabelledDataset& d, std::span<const double> beta) {
  return Empirical1D(project_rows(d, beta), d.weights());
}

}  // namespace wdro
