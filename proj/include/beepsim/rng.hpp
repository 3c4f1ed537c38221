#pragma once

#include <array>
#include <cstdint>

namespace beepsim {

namespace detail {

// splitmix64 finalizer; bijective on 64-bit words.
inline std::uint64_t mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t splitmix_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  return mix64(state);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// Deterministic random stream (xoshiro256** seeded through splitmix64).
//
// Streams derived from the same master seed but different stream ids are
// independent for simulation purposes, and the same (seed, id) pair always
// reproduces the same sequence. One stream is handed to each node so that
// runs are replayable and nodes never share randomness.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  static RngStream derive(std::uint64_t master_seed, std::uint64_t stream_id) {
    return RngStream(master_seed, stream_id);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = detail::rotl64(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = detail::rotl64(state_[3], 45);
    return result;
  }

  // Uniform double in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // One fair coin flip.
  bool next_bit() { return (next_u64() >> 63) != 0; }

  // Exact Bernoulli(2^-exponent) draw; never goes through floating point.
  bool bernoulli_pow2(std::uint32_t exponent) {
    while (exponent > 64) {
      if (next_u64() != 0) return false;
      exponent -= 64;
    }
    if (exponent == 0) return true;
    return (next_u64() >> (64 - exponent)) == 0;
  }

  // Uniform integer in [0, bound); bound must be at least 1. Unbiased via
  // rejection sampling.
  std::uint64_t uniform_below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id) {
    // Hash seed and id separately before combining so that consecutive ids
    // do not produce overlapping seeding windows.
    std::uint64_t z = detail::mix64(master_seed ^ 0x8BB84B93962EACC9ULL) ^
                      detail::mix64(stream_id ^ 0x2545F4914F6CDD1DULL);
    for (auto& word : state_) word = detail::splitmix_next(z);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 1;  // xoshiro must not start from the all-zero state
    }
  }

  std::array<std::uint64_t, 4> state_{};
};

// First output of the derived stream; handy for turning (seed, index) pairs
// into fresh seeds, e.g. one seed per trial.
inline std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream::derive(master_seed, stream_id).next_u64();
}

}  // namespace beepsim
