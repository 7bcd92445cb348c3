// Portable draws on top of mt19937_64. The standard distributions are
// implementation-defined, which would make seeded output differ between
// standard libraries. Internal header.
#ifndef DISAMB_SRC_RNG_H
#define DISAMB_SRC_RNG_H

#include <cstdint>
#include <limits>
#include <random>

namespace disamb::rng {

// Uniform in [0, bound), bound > 0.
inline std::uint64_t bounded(std::mt19937_64& g, std::uint64_t bound) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = kMax - kMax % bound;
  std::uint64_t x;
  do {
    x = g();
  } while (x >= limit);
  return x % bound;
}

// Uniform in [0, 1).
inline double uniform01(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }

inline bool bernoulli(std::mt19937_64& g, double p) { return uniform01(g) < p; }

}  // namespace disamb::rng

#endif  // DISAMB_SRC_RNG_H
