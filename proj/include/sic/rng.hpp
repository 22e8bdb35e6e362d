#pragma once

// SplitMix64 generator and the per-stream seed derivation used everywhere
// randomness appears. The exact constants and update order are part of the
// file-format contract: a codebook is stored as (seed, specs) and must
// regenerate bit-identically on any platform.

#include <cstdint>

namespace sic {

// Finalizing mix of SplitMix64 (two xorshift-multiply rounds).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  // Uniform in [0, bound). Plain modulo: bias is < bound / 2^64, invisible
  // at the bounds used here (< 2^32), and keeps the stream consumption at
  // exactly one draw so stored codebooks stay reproducible.
  std::uint64_t next_below(std::uint64_t bound) {
    return next() % bound;
  }

 private:
  std::uint64_t state_;
};

// Decorrelated seed for stream j of a family keyed by seed. Streams for
// distinct j never share SplitMix64 state walks in practice (collision
// probability 2^-64 per pair).
inline std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t j) {
  return mix64(seed ^ (0x9E3779B97F4A7C15ull * (j + 1)));
}

}  // namespace sic
