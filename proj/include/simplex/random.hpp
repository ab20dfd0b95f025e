#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace simplex {

/// Seeded N(0, variance) source with a fixed, portable stream: mt19937_64
/// (whose output sequence the standard pins down) feeding the basic
/// Box-Muller transform. std::normal_distribution is avoided because its
/// algorithm is implementation-defined.
class GaussianSource {
 public:
  explicit GaussianSource(std::uint64_t seed, double variance = 1.0)
      : engine_(seed), stddev_(std::sqrt(variance)) {}

  double operator()() {
    if (has_spare_) {
      has_spare_ = false;
      return stddev_ * spare_;
    }
    // u1 in (0, 1], u2 in [0, 1), both with 53 random bits.
    const double u1 = 1.0 - unit();
    const double u2 = unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return stddev_ * r * std::cos(phi);
  }

 private:
  double unit() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 engine_;
  double stddev_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes a base seed with a stream index (e.g. the dimension n) so that each
/// sub-experiment draws an independent, reproducible stream. SplitMix64
/// finalizer.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::uint64_t seed,
                                                  std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace simplex
