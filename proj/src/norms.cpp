#include "wdro/norms.hpp"

#include <cmath>
#include <stdexcept>

namespace wdro {

double norm_value(const NormSpec& norm, std::span<const double> x) {
  struct Vis {
    std::span<const double> x;
    double operator()(const L1Norm&) const {
      double s = 0.0;
      for (double v : x) s += std::abs(v);
      return s;
    }
    double operator()(const L2Norm&) const {
      double s = 0.0;
      for (double v : x) s += v * v;
      return std::sqrt(s);
    }
    double operator()(const LinfNorm&) const {
      double s = 0.0;
      for (double v : x) s = std::max(s, std::abs(v));
      return s;
    }
    double operator()(const WeightedL2Norm& n) const {
      if (n.weights.size() != x.size())
        throw std::invalid_argument("weighted norm: dimension mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) s += n.weights[i] * x[i] * x[i];
      return std::sqrt(s);
    }
  };
  return std::visit(Vis{x}, norm);
}

NormSpec dual(const NormSpec& norm) {
  struct Vis {
    NormSpec operator()(const L1Norm&) const { return LinfNorm{}; }
    NormSpec operator()(const L2Norm&) const { return L2Norm{}; }
    NormSpec operator()(const LinfNorm&) const { return L1Norm{}; }
    NormSpec operator()(const WeightedL2Norm& n) const {
      std::vector<double> inv(n.weights.size());
      for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = 1.0 / n.weights[i];
      return WeightedL2Norm{std::move(inv)};
    }
  };
  return std::visit(Vis{}, norm);
}

double dual_norm(std::span<const double> beta, const NormSpec& ground) {
  return norm_value(dual(ground), beta);
}

std::vector<double> dual_maximizer(std::span<const double> beta, const NormSpec& ground) {
  const std::size_t n = beta.size();
  const double bstar = dual_norm(beta, ground);
  if (!(bstar > 0.0)) throw std::invalid_argument("dual_maximizer: beta must be nonzero");
  std::vector<double> x(n, 0.0);

  if (std::holds_alternative<L1Norm>(ground)) {
    std::size_t jmax = 0;
    for (std::size_t j = 1; j < n; ++j)
      if (std::abs(beta[j]) > std::abs(beta[jmax])) jmax = j;
    x[jmax] = beta[jmax] >= 0.0 ? 1.0 : -1.0;
  } else if (std::holds_alternative<L2Norm>(ground)) {
    for (std::size_t j = 0; j < n; ++j) x[j] = beta[j] / bstar;
  } else if (std::holds_alternative<LinfNorm>(ground)) {
    for (std::size_t j = 0; j < n; ++j) x[j] = beta[j] >= 0.0 ? 1.0 : -1.0;
  } else {
    const auto& w = std::get<WeightedL2Norm>(ground).weights;
    if (w.size() != n) throw std::invalid_argument("weighted norm: dimension mismatch");
    for (std::size_t j = 0; j < n; ++j) x[j] = beta[j] / (w[j] * bstar);
  }
  return x;
}

void validate_norm(const NormSpec& norm, std::size_t dim) {
  if (const auto* w = std::get_if<WeightedL2Norm>(&norm)) {
    if (w->weights.size() != dim)
      throw std::invalid_argument("weighted norm: dimension mismatch");
    for (double v : w->weights)
      if (!(v > 0.0)) throw std::invalid_argument("weighted norm: weights must be positive");
  }
}

}  // namespace wdro
