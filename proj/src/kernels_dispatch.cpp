#include "wdro/kernels.hpp"

namespace wdro::kernels {
namespace {

const KernelTable* detect() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2_fma()) return &avx2_table();
#endif
#if defined(__aarch64__)
  return &neon_table();
#endif
  return &scalar_table();
}

const KernelTable*& selected() {
  static const KernelTable* table = detect();
  return table;
}

}  // namespace

const KernelTable& active() { return *selected(); }

void force_table(const KernelTable& table) { selected() = &table; }

void reset_table() { selected() = detect(); }

}  // namespace wdro::kernels
