#pragma once

#include <cstddef>

// Data-parallel inner loops used by the risk evaluators and the transport /
// oracle machinery. Each kernel has a portable scalar reference
// implementation; on x86-64 an AVX2+FMA variant is selected at runtime and is
// equivalence-tested against the reference in tests/test_kernels.cpp.
//
// All weighted sums treat (w, z) as parallel arrays of length n.

namespace wdro::kernels {

struct KernelTable {
  const char* name;

  // sum_i a[i]*b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  // sum_i w[i] * max(z[i]-t, 0)^p
  double (*hinge_pow_wsum)(const double* w, const double* z, double t, double p, std::size_t n);

  // sum_i w[i] * max(t-z[i], 0)^p
  double (*rhinge_pow_wsum)(const double* w, const double* z, double t, double p, std::size_t n);

  // sum_i w[i] * max(|z[i]-m1|-m2, 0)^p   (m2 may be negative, making the base
  // strictly positive; with m2=0 this is a weighted |z-m1|^p sum)
  double (*tshinge_pow_wsum)(const double* w, const double* z, double m1, double m2, double p,
                             std::size_t n);

  // y[i] += a*x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
bool cpu_has_avx2_fma();
const KernelTable& avx2_table();
#endif
#if defined(__aarch64__)
const KernelTable& neon_table();
#endif

// Table picked once per process from CPU capabilities (scalar fallback).
const KernelTable& active();

// Test hook: override the active table (not thread-safe, tests only).
void force_table(const KernelTable& table);
void reset_table();

inline double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
inline double hinge_pow_wsum(const double* w, const double* z, double t, double p, std::size_t n) {
  return active().hinge_pow_wsum(w, z, t, p, n);
}
inline double rhinge_pow_wsum(const double* w, const double* z, double t, double p, std::size_t n) {
  return active().rhinge_pow_wsum(w, z, t, p, n);
}
inline double tshinge_pow_wsum(const double* w, const double* z, double m1, double m2, double p,
                               std::size_t n) {
  return active().tshinge_pow_wsum(w, z, m1, m2, p, n);
}
inline void axpy(double a, const double* x, double* y, std::size_t n) { active().axpy(a, x, y, n); }

}  // namespace wdro::kernels
