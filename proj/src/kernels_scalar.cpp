#include "wdro/kernels.hpp"

#include <cmath>

namespace wdro::kernels {
namespace {

inline double pow_p(double base, double p) {
  if (p == 1.0) return base;
  if (p == 2.0) return base * base;
  if (p == 3.0) return base * base * base;
  return std::pow(base, p);
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

double hinge_pow_wsum_scalar(const double* w, const double* z, double t, double p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = z[i] - t;
    if (d > 0.0) acc += w[i] * pow_p(d, p);
  }
  return acc;
}

double rhinge_pow_wsum_scalar(const double* w, const double* z, double t, double p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = t - z[i];
    if (d > 0.0) acc += w[i] * pow_p(d, p);
  }
  return acc;
}

double tshinge_pow_wsum_scalar(const double* w, const double* z, double m1, double m2, double p,
                               std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(z[i] - m1) - m2;
    if (d > 0.0) acc += w[i] * pow_p(d, p);
  }
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{
      "scalar",     dot_scalar,           hinge_pow_wsum_scalar,
      rhinge_pow_wsum_scalar, tshinge_pow_wsum_scalar, axpy_scalar,
  };
  return table;
}

}  // namespace wdro::kernels
