#pragma once

#include <cstdint>

namespace tlearn {

// SplitMix64 (Steele, Lea, Flood 2014): a Weyl-sequence counter passed
// through a 64-bit finalizer. Chosen over <random> engines + distributions
// because the output of std::uniform_*_distribution is implementation
// defined, and trial replays must match across toolchains.
class Rng {
 public:
  explicit constexpr Rng(std::uint64_t seed = 0) : state_(seed) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1) with 53 bits of resolution.
  constexpr double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  constexpr double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
  constexpr std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % n;
  }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// Independent per-trial streams, all derived from the trial seed.
enum class Stream : std::uint64_t {
  initial_angles = 1,
  tie_breaks = 2,
  weights = 3,
};

constexpr Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t attempt = 0) {
  return Rng(Rng::mix(Rng::mix(seed) ^ (static_cast<std::uint64_t>(stream) << 48) ^ attempt));
}

}  // namespace tlearn
