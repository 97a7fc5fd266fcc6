#include "wdro/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>

namespace wdro::kernels {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  std::size_t i = 0;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// (z-t)+ clamped to zero, raised to p in-register for p in {1,2,3}.
template <int P>
double hinge_ipow_wsum_avx2(const double* w, const double* z, double t, std::size_t n) {
  std::size_t i = 0;
  const __m256d tv = _mm256_set1_pd(t);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_max_pd(_mm256_sub_pd(_mm256_loadu_pd(z + i), tv), zero);
    __m256d term = d;
    if constexpr (P >= 2) term = _mm256_mul_pd(term, d);
    if constexpr (P >= 3) term = _mm256_mul_pd(term, d);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), term, acc);
  }
  double s = hsum(acc);
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

double hinge_pow_wsum_avx2(const double* w, const double* z, double t, double p, std::size_t n) {
  if (p == 1.0) return hinge_ipow_wsum_avx2<1>(w, z, t, n);
  if (p == 2.0) return hinge_ipow_wsum_avx2<2>(w, z, t, n);
  if (p == 3.0) return hinge_ipow_wsum_avx2<3>(w, z, t, n);
  double acc = 0.0;  // no vector pow; fractional exponents stay scalar
  for (std::size_t i = 0; i < n; ++i) {
    const double d = z[i] - t;
    if (d > 0.0) acc += w[i] * std::pow(d, p);
  }
  return acc;
}

template <int P>
double rhinge_ipow_wsum_avx2(const double* w, const double* z, double t, std::size_t n) {
  std::size_t i = 0;
  const __m256d tv = _mm256_set1_pd(t);
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d d = _mm256_max_pd(_mm256_sub_pd(tv, _mm256_loadu_pd(z + i)), zero);
    __m256d term = d;
    if constexpr (P >= 2) term = _mm256_mul_pd(term, d);
    if constexpr (P >= 3) term = _mm256_mul_pd(term, d);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), term, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = t - z[i];
    if (d > 0.0) {
      double term = d;
      if constexpr (P >= 2) term *= d;
      if constexpr (P >= 3) term *= d;
      s += w[i] * term;
    }
  }
  return s;
}

double rhinge_pow_wsum_avx2(const double* w, const double* z, double t, double p, std::size_t n) {
  if (p == 1.0) return rhinge_ipow_wsum_avx2<1>(w, z, t, n);
  if (p == 2.0) return rhinge_ipow_wsum_avx2<2>(w, z, t, n);
  if (p == 3.0) return rhinge_ipow_wsum_avx2<3>(w, z, t, n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = t - z[i];
    if (d > 0.0) acc += w[i] * std::pow(d, p);
  }
  return acc;
}

template <int P>
double tshinge_ipow_wsum_avx2(const double* w, const double* z, double m1, double m2,
                              std::size_t n) {
  std::size_t i = 0;
  const __m256d m1v = _mm256_set1_pd(m1);
  const __m256d m2v = _mm256_set1_pd(m2);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  __m256d acc = _mm256_setzero_pd();
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_and_pd(_mm256_sub_pd(_mm256_loadu_pd(z + i), m1v), absmask);
    __m256d d = _mm256_max_pd(_mm256_sub_pd(a, m2v), zero);
    __m256d term = d;
    if constexpr (P >= 2) term = _mm256_mul_pd(term, d);
    if constexpr (P >= 3) term = _mm256_mul_pd(term, d);
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(w + i), term, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    const double d = std::abs(z[i] - m1) - m2;
    if (d > 0.0) {
      double term = d;
      if constexpr (P >= 2) term *= d;
      if constexpr (P >= 3) term *= d;
      s += w[i] * term;
    }
  }
  return s;
}

double tshinge_pow_wsum_avx2(const double* w, const double* z, double m1, double m2, double p,
                             std::size_t n) {
  if (p == 1.0) return tshinge_ipow_wsum_avx2<1>(w, z, m1, m2, n);
  if (p == 2.0) return tshinge_ipow_wsum_avx2<2>(w, z, m1, m2, n);
  if (p == 3.0) return tshinge_ipow_wsum_avx2<3>(w, z, m1, m2, n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(z[i] - m1) - m2;
    if (d > 0.0) acc += w[i] * std::pow(d, p);
  }
  return acc;
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  std::size_t i = 0;
  const __m256d av = _mm256_set1_pd(a);
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

bool cpu_has_avx2_fma() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const KernelTable& avx2_table() {
  static const KernelTable table{
      "avx2",     dot_avx2,           hinge_pow_wsum_avx2,
      rhinge_pow_wsum_avx2, tshinge_pow_wsum_avx2, axpy_avx2,
  };
  return table;
}

}  // namespace wdro::kernels

#endif  // x86-64
