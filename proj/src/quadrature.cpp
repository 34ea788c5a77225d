#include "deltaineff/quadrature.hpp"

#include <array>
#include <cmath>
#include <mutex>
#include <numbers>

namespace deltaineff::quad {

namespace {

constexpr int kMaxCachedLevel = 15;

TsLevel build_level(int level) {
  TsLevel tbl;
  tbl.step = std::ldexp(1.0, -level);
  tbl.center_weight = 0.5 * std::numbers::pi;
  for (std::size_t j = 1;; ++j) {
    const double t = static_cast<double>(j) * tbl.step;
    if (t > 7.0) break;
    const double omega = 0.5 * std::numbers::pi * std::sinh(t);
    double offset, weight;
    if (omega < 300.0) {
      offset = 2.0 / (std::exp(2.0 * omega) + 1.0);  // 1 - tanh(omega)
      const double ch = std::cosh(omega);
      weight = 0.5 * std::numbers::pi * std::cosh(t) / (ch * ch);
    } else {
      const double e = std::exp(-2.0 * omega);
      offset = 2.0 * e;
      weight = 2.0 * std::numbers::pi * std::cosh(t) * e;
    }
    if (offset <= 0.0 || weight < 1e-300) break;
    tbl.nodes.push_back({offset, weight});
  }
  return tbl;
}

}  // namespace

const TsLevel& ts_level(int level) {
  if (level < 0) level = 0;
  if (level > kMaxCachedLevel) level = kMaxCachedLevel;
  static std::array<TsLevel, kMaxCachedLevel + 1> cache;
  static std::array<std::once_flag, kMaxCachedLevel + 1> once;
  std::call_once(once[level], [level] { cache[level] = build_level(level); });
  return cache[level];
}

}  // namespace deltaineff::quad
