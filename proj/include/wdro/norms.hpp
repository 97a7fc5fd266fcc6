#pragma once

#include <span>
#include <variant>
#include <vector>

namespace wdro {

struct L1Norm {};
struct L2Norm {};
struct LinfNorm {};
struct WeightedL2Norm {
  std::vector<double> weights;  // strictly positive diagonal
};

using NormSpec = std::variant<L1Norm, L2Norm, LinfNorm, WeightedL2Norm>;

double norm_value(const NormSpec& norm, std::span<const double> x);

// Exact dual pairing: L1<->Linf, L2<->L2, WeightedL2(w)<->WeightedL2(1/w).
NormSpec dual(const NormSpec& norm);

// ||beta||_* = sup{ beta.x : ||x|| <= 1 } for the given ground norm.
double dual_norm(std::span<const double> beta, const NormSpec& ground);

// The point achieving the dual norm: ||x|| = 1 and beta.x = ||beta||_*.
// For L1 the maximizer is a signed unit coordinate with a lexicographic
// tie-break on the first maximal coordinate. Rejects beta = 0.
std::vector<double> dual_maximizer(std::span<const double> beta, const NormSpec& ground);

void validate_norm(const NormSpec& norm, std::size_t dim);

}  // namespace wdro
