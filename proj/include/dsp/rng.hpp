#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace dsp {

// All randomness in the library goes through mt19937_64 plus the helpers
// below. std::uniform_int_distribution is not pinned down by the standard,
// so reports would not replay across toolchains if we used it.

/// Unbiased draw from [0, m) via rejection sampling. m = 0 returns 0.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
  if (m <= 1) return 0;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % m;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % m;
}

/// Uniform double in [0, 1) with 53 random bits.
inline double unit_real(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// k distinct values from {0, ..., n-1}, returned sorted ascending.
inline std::vector<std::uint32_t> sample_without_replacement(std::mt19937_64& rng,
                                                             std::uint32_t n,
                                                             std::uint32_t k) {
  if (k > n) k = n;
  std::vector<std::uint32_t> pool(n);
  for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
  for (std::uint32_t i = 0; i < k; ++i) {
    const std::uint32_t j = i + static_cast<std::uint32_t>(uniform_below(rng, n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace dsp
