#include "wdro/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <cmath>

namespace wdro::kernels {
namespace {

double dot_neon(const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  float64x2_t acc = vdupq_n_f64(0.0);
  for (; i + 2 <= n; i += 2) acc = vfmaq_f64(acc, vld1q_f64(a + i), vld1q_f64(b + i));
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

template <int P>
double hinge_ipow_wsum_neon(const double* w, const double* z, double t, std::size_t n) {
  std::size_t i = 0;
  const float64x2_t tv = vdupq_n_f64(t);
  const float64x2_t zero = vdupq_n_f64(0.0);
  float64x2_t acc = vdupq_n_f64(0.0);
  for (; i + 2 <= n; i += 2) {
    float64x2_t d = vmaxq_f64(vsubq_f64(vld1q_f64(z + i), tv), zero);
    float64x2_t term = d;
    if constexpr (P >= 2) term = vmulq_f64(term, d);
    if constexpr (P >= 3) term = vmulq_f64(term, d);
    acc = vfmaq_f64(acc, vld1q_f64(w + i), term);
  }
  double s = vaddvq_f64(acc);
  for (; i < n; ++i) {
    const double d = z[i] - t;
    if (d > 0.0) {
      double term = d;
      if constexpr (P >= 2) term *= d;
      if constexpr (P >= 3) term *= d;
      s += w[i] * term;
    }
  }
  return s;
}

double hinge_pow_wsum_neon(const double* w, const double* z, double t, double p, std::size_t n) {
  if (p == 1.0) return hinge_ipow_wsum_neon<1>(w, z, t, n);
  if (p == 2.0) return hinge_ipow_wsum_neon<2>(w, z, t, n);
  if (p == 3.0) return hinge_ipow_wsum_neon<3>(w, z, t, n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = z[i] - t;
    if (d > 0.0) acc += w[i] * std::pow(d, p);
  }
  return acc;
}

double rhinge_pow_wsum_neon(const double* w, const double* z, double t, double p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = t - z[i];
    if (d > 0.0) acc += w[i] * (p == 1.0 ? d : p == 2.0 ? d * d : p == 3.0 ? d * d * d : std::pow(d, p));
  }
  return acc;
}

double tshinge_pow_wsum_neon(const double* w, const double* z, double m1, double m2, double p,
                             std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(z[i] - m1) - m2;
    if (d > 0.0) acc += w[i] * (p == 1.0 ? d : p == 2.0 ? d * d : p == 3.0 ? d * d * d : std::pow(d, p));
  }
  return acc;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  const float64x2_t av = vdupq_n_f64(a);
  for (; i + 2 <= n; i += 2) vst1q_f64(y + i, vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i)));
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{
      "neon",     dot_neon,           hinge_pow_wsum_neon,
      rhinge_pow_wsum_neon, tshinge_pow_wsum_neon, axpy_neon,
  };
  return table;
}

}  // namespace wdro::kernels

#endif  // aarch64
