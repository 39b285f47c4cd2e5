#pragma once

#include <cstdint>

#include "ctc/types.hpp"

namespace ctc {

/// Counter-based deterministic stream (splitmix64 core): the same (key,
/// counter) pair yields the same values on every platform and thread layout.
class RngStream {
public:
  explicit RngStream(std::uint64_t key) : state_(key) {}

  static RngStream keyed(std::uint64_t seed, std::uint64_t index) {
    RngStream base(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    base.next(); // decorrelate nearby indices
    return base;
  }

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }

  /// Uniform direction on the unit sphere.
  Vec3 unit_vector() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * 3.14159265358979323846);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi), r * std::sin(phi), z};
  }

private:
  std::uint64_t state_;
};

} // namespace ctc
