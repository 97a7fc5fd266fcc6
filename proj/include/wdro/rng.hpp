#pragma once

#include <cmath>
#include <cstdint>

// Self-contained deterministic RNG so that seeded runs reproduce bit-for-bit.
// All derived streams (per restart, per trial, per instance) come from
// split(master, index), which is the documented splitmix step of the master
// seed; nothing else in the library draws randomness.

namespace wdro {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // warm up so that small seeds diverge immediately
    splitmix64_next(state_);
  }

  static Rng split(std::uint64_t master, std::uint64_t index) {
    std::uint64_t s = master;
    std::uint64_t a = splitmix64_next(s);
    return Rng(a ^ (index * 0x9e3779b97f4a7c15ULL + 0x165667b19e3779f9ULL));
  }

  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // uniform in [0,1)
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Box-Muller; one value per call keeps the stream layout simple
  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

  // uniform integer in [0, bound)
  std::uint64_t uniform_int(std::uint64_t bound) { return next_u64() % bound; }

 private:
  std::uint64_t state_;
};

}  // namespace wdro
