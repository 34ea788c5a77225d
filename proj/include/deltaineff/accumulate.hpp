#pragma once

#include <cmath>

namespace deltaineff {

/// Neumaier-compensated accumulator. Tracks the rounding error of every
/// addition and folds it back in value(), so the result is insensitive to
/// summand magnitude ordering at the 1e-16 relative level even for 1e6 terms.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace deltaineff
