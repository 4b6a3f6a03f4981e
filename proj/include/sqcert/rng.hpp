#pragma once

#include <cstdint>

#include "sqcert/rational.hpp"

namespace sqcert {

// splitmix64. Deterministic across platforms, which std:: distributions are
// not; every seeded report in this project depends on that.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Unbiased uniform draw from [0, bound), bound >= 1.
  std::uint64_t below(std::uint64_t bound);

  double unit_real() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // k/granularity with k uniform in [0, granularity].
  Rational unit_rational(std::uint64_t granularity = 1000) {
    return rat_u64(below(granularity + 1), granularity);
  }

 private:
  std::uint64_t state_;
};

// Stable per-task seed so parallel trials do not depend on scheduling.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace sqcert
