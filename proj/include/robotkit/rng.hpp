#pragma once

#include <cstdint>
#include <cstddef>
#include <vector>

namespace robot {

// Deterministic, stream-splittable RNG (xoshiro256** seeded via splitmix64).
// Every randomized operation in the toolkit draws from an explicitly passed
// Rng; per-sample streams are derived with for_stream(seed, index) so batch
// results do not depend on thread count or iteration order.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Independent stream for (seed, stream_index). Same (seed, index) pair
  // always yields the same sequence.
  static Rng for_stream(uint64_t seed, uint64_t stream);

  uint64_t next_u64();

  // Uniform double in [0, 1).
  double uniform();
  // Uniform double in [lo, hi).
  double uniform(double lo, double hi);
  // Uniform integer in [0, n), n > 0. Rejection sampled, unbiased.
  uint64_t uniform_int(uint64_t n);
  // Standard normal (Box-Muller, no state cached).
  double normal();

  // First n entries of a seeded Fisher-Yates shuffle of 0..m-1.
  std::vector<size_t> sample_without_replacement(size_t m, size_t n);
  // Full permutation of 0..m-1.
  std::vector<size_t> permutation(size_t m);

 private:
  uint64_t s_[4];
};

}  // namespace robot
