#pragma once

#include <cstdint>

namespace qesim {

// Deterministic seedable generator (xoshiro256** seeded via splitmix64).
// Every random draw in the library goes through an injected Prng so that
// identical seeds reproduce identical transcripts, independent of the
// standard library's distribution implementations.
class Prng {
 public:
  explicit Prng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform double in [0, 1) with 53 bits of precision.
  double uniform01();

  // Standard normal via Box-Muller (hand-rolled for cross-stdlib determinism).
  double normal();

  // Uniform integer in [0, n), unbiased.
  std::uint64_t uniform_below(std::uint64_t n);

  bool bit();

  // Derive an independent stream; the parent advances once.
  Prng fork(std::uint64_t stream_tag);

 private:
  std::uint64_t s_[4];
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace qesim
