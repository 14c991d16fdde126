#pragma once

#include <cstdint>

namespace junta_lab {

/// SplitMix64 finalizer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic counter-based stream: the j-th draw of stream `stream`
/// under seed `seed` is a pure function of (seed, stream, j). Monte-Carlo
/// estimators key one stream per sample so results do not depend on how
/// samples are scheduled across workers.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream)
      : state_(mix64(mix64(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// +1 with probability (1 + mu) / 2, else -1.
  double next_pm(double mu) {
    return next_unit() < (1.0 + mu) / 2.0 ? 1.0 : -1.0;
  }

 private:
  std::uint64_t state_;
};

}  // namespace junta_lab
