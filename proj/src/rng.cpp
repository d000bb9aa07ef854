#include "robotkit/rng.hpp"

#include <cmath>
#include <numbers>

#include "robotkit/errors.hpp"

namespace robot {

namespace {

inline uint64_t splitmix64(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

Rng Rng::for_stream(uint64_t seed, uint64_t stream) {
  // Mix the stream index through splitmix before seeding so that adjacent
  // streams are statistically independent.
  uint64_t sm = stream;
  uint64_t mixed = seed ^ splitmix64(sm);
  return Rng(mixed);
}

uint64_t Rng::next_u64() {
  // xoshiro256**
  const uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  // 53 mantissa bits -> [0, 1)
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

uint64_t Rng::uniform_int(uint64_t n) {
  if (n == 0) throw ArgumentError("uniform_int: n must be positive");
  const uint64_t threshold = -n % n;  // 2^64 mod n
  for (;;) {
    uint64_t r = next_u64();
    if (r >= threshold) return r % n;
  }
}

double Rng::normal() {
  double u1 = uniform();
  double u2 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<size_t> Rng::sample_without_replacement(size_t m, size_t n) {
  if (n > m) throw ArgumentError("sample_without_replacement: n > m");
  std::vector<size_t> idx(m);
  for (size_t i = 0; i < m; ++i) idx[i] = i;
  for (size_t i = 0; i < n; ++i) {
    size_t j = i + static_cast<size_t>(uniform_int(m - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(n);
  return idx;
}

std::vector<size_t> Rng::permutation(size_t m) {
  return sample_without_replacement(m, m);
}

}  // namespace robot
