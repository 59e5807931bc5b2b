#pragma once

#include <cstdint>
#include <vector>

namespace cod {

/// Counter-based splitmix64 stream. State is a pure function of (seed,
/// stream, counter), so trial sampling is reproducible across platforms and
/// independent of any global RNG.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed, std::uint64_t stream = 0)
      : state_(seed ^ (stream * 0x9e3779b97f4a7c15ULL + 0x5851f42d4c957f2dULL)) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Unbiased integer in [0, bound).
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t value;
    do {
      value = next();
    } while (value >= limit);
    return value % bound;
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Partial Fisher-Yates sample of k distinct elements from `pool`.
template <typename T>
std::vector<T> sample_without_replacement(std::vector<T> pool, std::size_t k, SplitMix64& rng) {
  std::vector<T> picked;
  picked.reserve(k);
  for (std::size_t i = 0; i < k && !pool.empty(); ++i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_below(pool.size()));
    picked.push_back(pool[j]);
    pool[j] = pool.back();
    pool.pop_back();
  }
  return picked;
}

}  // namespace cod
