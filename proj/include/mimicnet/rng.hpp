#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <limits>

namespace mimicnet {

/// SplitMix64. Small, fast, and a valid UniformRandomBitGenerator, so it plugs
/// into the <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller. Spelled out rather than taken from
  /// std::normal_distribution so streams agree across standard libraries.
  double normal() {
    double u1 = 0;
    do {
      u1 = uniform();
    } while (u1 <= 0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed from a root seed and a path of indices.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = seed;
  for (std::uint64_t p : path) {
    SplitMix64 g(h ^ (p * 0xD1B54A32D192ED03ULL + 0x8CB92BA72F3D8DD7ULL));
    h = g();
  }
  return SplitMix64(h)();
}

}  // namespace mimicnet
