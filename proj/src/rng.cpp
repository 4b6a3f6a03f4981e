#include "sqcert/rng.hpp"

namespace sqcert {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  // rejection sampling over the largest multiple of bound
  const std::uint64_t limit = bound * ((~0ULL) / bound);
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
  g.next();
  return g.next();
}

}  // namespace sqcert
