#pragma once

#include <cmath>
#include <vector>

#include "deltaineff/accumulate.hpp"

namespace deltaineff::quad {

/// One positive tanh-sinh abscissa. `offset` is the distance of the node from
/// the nearer interval endpoint, measured on (-1,1); keeping the offset rather
/// than the node itself preserves precision down to ~1e-300, which is what
/// makes endpoint singularities integrable numerically.
struct TsNode {
  double offset;
  double weight;
};

struct TsLevel {
  double step = 0.0;                // h of the trapezoidal t-grid
  double center_weight = 0.0;       // weight of the t=0 node (interval midpoint)
  std::vector<TsNode> nodes;        // nodes for t = h, 2h, ... until underflow
};

/// Node table for step h = 2^-level, cached after first use.
const TsLevel& ts_level(int level);

/// Adaptive tanh-sinh integral of f over (a, b). Doubles the node density
/// until two successive levels agree to max(abs_tol, rel_tol*|I|) or
/// max_level is reached. f may blow up at either endpoint as long as the
/// singularity is integrable.
template <typename F>
double tanh_sinh(F&& f, double a, double b, double abs_tol = 1e-13,
                 double rel_tol = 1e-13, int max_level = 12) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double prev = 0.0;
  bool have_prev = false;
  double result = 0.0;
  for (int level = 3; level <= max_level; ++level) {
    const TsLevel& tbl = ts_level(level);
    CompensatedSum acc;
    acc.add(tbl.center_weight * f(mid));
    for (const TsNode& n : tbl.nodes) {
      if (n.weight <= 0.0) continue;
      const double lo = a + half * n.offset;
      const double hi = b - half * n.offset;
      if (lo > a) acc.add(n.weight * f(lo));
      if (hi < b) acc.add(n.weight * f(hi));
    }
    result = acc.value() * tbl.step * half;
    if (have_prev &&
        std::abs(result - prev) <= std::max(abs_tol, rel_tol * std::abs(result)))
      return result;
    prev = result;
    have_prev = true;
  }
  return result;
}

}  // namespace deltaineff::quad
