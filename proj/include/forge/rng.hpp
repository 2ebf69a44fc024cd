#pragma once

#include <cstdint>
#include <random>

namespace forge {

/// Unbiased value in [0, bound) from a 64-bit engine (rejection sampling).
/// The output does not depend on the standard library implementation.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

}  // namespace forge
