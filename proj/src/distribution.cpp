#include "wdro/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "wdro/kernels.hpp"

namespace wdro {

Empirical1D::Empirical1D(std::vector<double> atoms, std::vector<double> weights) {
  if (atoms.size() != weights.size())
    throw std::invalid_argument("Empirical1D: atoms/weights size mismatch");
  if (atoms.empty()) throw std::invalid_argument("Empirical1D: empty support");

  double sum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("Empirical1D: weights must be positive");
    if (!std::isfinite(atoms[i])) throw std::invalid_argument("Empirical1D: non-finite atom");
    sum += weights[i];
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("Empirical1D: weights must sum to 1 within 1e-12");

  std::vector<std::size_t> order(atoms.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });

  atoms_.reserve(atoms.size());
  weights_.reserve(atoms.size());
  for (std::size_t k : order) {
    if (!atoms_.empty() && atoms[k] == atoms_.back()) {
      weights_.back() += weights[k];
    } else {
      atoms_.push_back(atoms[k]);
      weights_.push_back(weights[k]);
    }
  }
}

Empirical1D Empirical1D::point_mass(double x) { return Empirical1D({x}, {1.0}); }

Empirical1D Empirical1D::from_samples(std::vector<double> draws) {
  if (draws.empty()) throw std::invalid_argument("Empirical1D: no samples");
  const double w = 1.0 / static_cast<double>(draws.size());
  std::sort(draws.begin(), draws.end());
  Empirical1D d;
  d.atoms_.reserve(draws.size());
  d.weights_.reserve(draws.size());
  for (double x : draws) {
    if (!d.atoms_.empty() && x == d.atoms_.back()) {
      d.weights_.back() += w;
    } else {
      d.atoms_.push_back(x);
      d.weights_.push_back(w);
    }
  }
  return d;
}

double Empirical1D::mean() const {
  return kernels::dot(weights_.data(), atoms_.data(), atoms_.size());
}

double Empirical1D::quantile(double s) const {
  if (s < 0.0 || s > 1.0) throw std::invalid_argument("quantile: level outside [0,1]");
  double cum = 0.0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    cum += weights_[i];
    if (cum >= s) return atoms_[i];
  }
  return atoms_.back();  // guard against fp shortfall in the cumulative sum
}

Empirical1D Empirical1D::shifted(double c) const {
  Empirical1D d;
  d.atoms_ = atoms_;
  for (double& a : d.atoms_) a += c;
  d.weights_ = weights_;
  return d;
}

Empirical1D Empirical1D::scaled(double a) const {
  std::vector<double> atoms = atoms_;
  for (double& x : atoms) x *= a;
  return Empirical1D(std::move(atoms), weights_);
}

Empirical1D Empirical1D::perturbed(std::span<const double> v) const {
  if (v.size() != atoms_.size()) throw std::invalid_argument("perturbed: size mismatch");
  std::vector<double> atoms(atoms_.size());
  for (std::size_t i = 0; i < atoms_.size(); ++i) atoms[i] = atoms_[i] + v[i];
  return Empirical1D(std::move(atoms), weights_);
}

}  // namespace wdro
