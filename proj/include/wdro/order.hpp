#pragma once

#include <stdexcept>

namespace wdro {

// Wasserstein order p in [1, inf]. Infinity is a distinct flag, never a large
// float, so dispatch on it is exact.
struct WOrder {
  bool infinite = false;
  double p = 1.0;  // meaningful only when !infinite

  static WOrder finite(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("WOrder: p must be >= 1");
    return WOrder{false, p};
  }
  static WOrder inf() { return WOrder{true, 1.0}; }

  // Hoelder conjugate q with 1/p + 1/q = 1.
  WOrder conjugate() const {
    if (infinite) return finite(1.0);
    if (p == 1.0) return inf();
    return finite(p / (p - 1.0));
  }

  bool operator==(const WOrder& o) const {
    return infinite == o.infinite && (infinite || p == o.p);
  }
};

}  // namespace wdro
