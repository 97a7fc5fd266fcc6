#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wdro {

// Finitely supported distribution on the real line. The stored view is
// canonical: atoms sorted ascending, exact ties merged by summing weights,
// weights strictly positive and summing to one (checked to 1e-12).
class Empirical1D {
 public:
  Empirical1D(std::vector<double> atoms, std::vector<double> weights);

  static Empirical1D point_mass(double x);
  // Equal-weight empirical distribution of raw draws.
  static Empirical1D from_samples(std::vector<double> draws);

  const std::vector<double>& atoms() const { return atoms_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return atoms_.size(); }

  double min() const { return atoms_.front(); }
  double max() const { return atoms_.back(); }
  double mean() const;

  // Left quantile, inf{x : F(x) >= s}; s in (0,1], quantile(0) = min.
  double quantile(double s) const;

  Empirical1D shifted(double c) const;
  Empirical1D scaled(double a) const;
  // New distribution with atoms[i] + v[i] (canonical order), same weights.
  Empirical1D perturbed(std::span<const double> v) const;

 private:
  Empirical1D() = default;
  std::vector<double> atoms_;
  std::vector<double> weights_;
};

}  // namespace wdro
