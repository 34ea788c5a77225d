#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace deltaineff {

/// splitmix64: tiny counter-scrambling generator. Used both as the sample
/// stream and as the stateless (seed, batch index) -> stream derivation, so
/// Monte Carlo results are bitwise reproducible on any platform.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform double strictly inside (0, 1).
  double uniform01() {
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
};

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 s(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  return s.next();
}

/// Standard-normal stream via Box-Muller on splitmix64 uniforms.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}

  double next() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = rng_.uniform01();
    const double u2 = rng_.uniform01();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare_ = rad * std::sin(ang);
    have_spare_ = true;
    return rad * std::cos(ang);
  }

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace deltaineff
