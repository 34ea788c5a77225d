#pragma once

#include <limits>

#include "deltaineff/errors.hpp"

namespace deltaineff {

/// Contact-interaction strength: a finite nonzero g, or the hard-core
/// (infinite repulsion) limit where the secular condition becomes sum = 0.
class Coupling {
 public:
  static Coupling finite(double g) {
    if (g == 0.0 || !std::isfinite(g))
      throw ConfigError("finite coupling must be nonzero and finite");
    return Coupling(g, false);
  }

  static Coupling hard_core() { return Coupling(0.0, true); }

  bool is_hard_core() const { return hard_core_; }
  bool attractive() const { return !hard_core_ && g_ < 0.0; }
  bool repulsive() const { return hard_core_ || g_ > 0.0; }

  /// Finite value; +inf in hard-core mode.
  double value() const {
    return hard_core_ ? std::numeric_limits<double>::infinity() : g_;
  }

  /// 1/g, the right-hand side of the secular condition; 0 in hard-core mode.
  double inverse() const { return hard_core_ ? 0.0 : 1.0 / g_; }

 private:
  Coupling(double g, bool hc) : g_(g), hard_core_(hc) {}

  double g_;
  bool hard_core_;
};

}  // namespace deltaineff
