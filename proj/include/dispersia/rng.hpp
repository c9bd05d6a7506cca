#pragma once

#include <cmath>
#include <cstdint>

namespace dispersia {

// SplitMix64. Used everywhere instead of std::random distributions so that
// results are identical across standard libraries.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0,1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  // integer in [lo, hi] inclusive
  long long uniform_int(long long lo, long long hi) {
    return lo + static_cast<long long>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  // standard normal, Box-Muller
  double next_gaussian() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

private:
  std::uint64_t state_;
};

// Counter-based seed splitting: independent stream per (seed, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng mix(seed ^ (0x9e3779b97f4a7c15ULL + index * 0xda942042e4dd58b5ULL));
  return mix.next_u64();
}

}  // namespace dispersia
