#pragma once

#include <cmath>
#include <utility>

namespace wdro {

// Golden-section minimization of a convex function on [lo, hi]. If the
// minimizer lands at a boundary the bracket is expanded on that side (the
// callers' objectives are coercive, so expansion terminates).
template <typename F>
std::pair<double, double> minimize_convex_1d(F&& f, double lo, double hi, double tol) {
  constexpr double kInvPhi = 0.6180339887498948482;
  if (hi < lo) std::swap(lo, hi);
  if (tol <= 0.0) tol = 1e-12;

  for (int expand = 0; expand < 64; ++expand) {
    double a = lo, b = hi;
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
      if (fc < fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - kInvPhi * (b - a);
        fc = f(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + kInvPhi * (b - a);
        fd = f(d);
      }
    }
    const double t = 0.5 * (a + b);
    const double span = (hi - lo) > 0.0 ? (hi - lo) : 1.0;
    if (t - lo < 2.0 * tol + 1e-14 * span && f(lo) <= f(t)) {
      hi = lo + 0.25 * span;
      lo -= span;
      continue;
    }
    if (hi - t < 2.0 * tol + 1e-14 * span && f(hi) <= f(t)) {
      lo = hi - 0.25 * span;
      hi += span;
      continue;
    }
    return {t, f(t)};
  }
  const double t = 0.5 * (lo + hi);
  return {t, f(t)};
}

}  // namespace wdro
