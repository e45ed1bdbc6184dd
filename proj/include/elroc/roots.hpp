#pragma once

#include <cmath>

namespace elroc {

// Bisection for a sign change of f on [lo, hi]. Stops once the bracket is
// narrower than `tolerance` and returns its midpoint.
template <typename F>
double bisect(F&& f, double lo, double hi, double tolerance) {
  double f_lo = f(lo);
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if (std::signbit(f_mid) == std::signbit(f_lo)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace elroc
