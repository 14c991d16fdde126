#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace junta_lab {

/// Tolerance constants used across the library. Algebraic identities
/// (Parseval, sandwich chains, round trips) are checked at `algebra`;
/// normalization of probability vectors at `normalization`.
struct Tolerances {
  double algebra = 1e-9;
  double normalization = 1e-12;
};
inline constexpr Tolerances kTol{};

/// Capacity limits. Dense tables are rejected above these arities instead
/// of silently paging.
inline constexpr int kMaxTableArity = 28;
inline constexpr int kMaxSpectrumArity = 20;
inline constexpr int kMaxMaterializeBits = 14;
inline constexpr int kMaxJuntaSearchArity = 20;
inline constexpr std::int64_t kMaxJuntaSearchSets = 1'000'000;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input failed a documented precondition (bad flag, malformed file, ...).
struct ValidationError : Error {
  using Error::Error;
};

/// Requested instance exceeds a dense-table or search capacity limit.
struct CapacityError : Error {
  using Error::Error;
};

/// A quantity the library promised to satisfy a bound did not.
struct BoundViolation : Error {
  using Error::Error;
};

/// Well-formed input with no meaningful answer (e.g. root finding on a
/// constant function).
struct DegenerateError : Error {
  using Error::Error;
};

/// A tester exceeded its declared oracle budget.
struct ProtocolViolation : Error {
  using Error::Error;
};

/// sign with the global convention sign(0) = +1.
inline double sign_pm(double v) { return v >= 0.0 ? 1.0 : -1.0; }

inline int popcount32(std::uint32_t x) { return std::popcount(x); }

/// Gathers the bits of `x` selected by `mask` into a contiguous low-order
/// value (software PEXT). Bit order within `mask` is preserved.
inline std::uint32_t compress_bits(std::uint32_t x, std::uint32_t mask) {
  std::uint32_t out = 0;
  int pos = 0;
  while (mask != 0) {
    std::uint32_t low = mask & (~mask + 1);
    if (x & low) out |= (1u << pos);
    ++pos;
    mask ^= low;
  }
  return out;
}

/// Inverse of compress_bits: scatters low-order bits of `x` into the
/// positions selected by `mask`.
inline std::uint32_t expand_bits(std::uint32_t x, std::uint32_t mask) {
  std::uint32_t out = 0;
  int pos = 0;
  while (mask != 0) {
    std::uint32_t low = mask & (~mask + 1);
    if (x & (1u << pos)) out |= low;
    ++pos;
    mask ^= low;
  }
  return out;
}

/// Next bitmask with the same popcount (Gosper). Returns 0 on wraparound.
inline std::uint32_t next_same_popcount(std::uint32_t v) {
  if (v == 0) return 0;
  std::uint32_t c = v & (~v + 1);
  std::uint32_t r = v + c;
  std::uint32_t next = (((r ^ v) >> 2) / c) | r;
  return next;
}

/// Binomial coefficient, saturating at max int64.
inline std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

}  // namespace junta_lab
