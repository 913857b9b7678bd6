#pragma once

#include <cstdint>
#include <random>

namespace cycles {

/// Uniform double in [0,1) from the top 53 bits of an mt19937_64 draw.
/// Used instead of std::uniform_real_distribution so that seeded sweeps are
/// bit-identical across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace cycles
