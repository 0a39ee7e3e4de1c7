#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace dcres {

// Deterministic random stream. mt19937_64 output is pinned by the standard,
// and all draws below are implemented on top of raw 64-bit words, so a given
// seed yields the same sequence on every platform and standard library.
// Distinct runs own distinct streams; a stream is not thread-safe.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform integer in [0, n). n must be >= 1.
  std::uint64_t bounded(std::uint64_t n) {
    // rejection below threshold keeps the modulo unbiased
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = gen_();
      if (r >= threshold) return r % n;
    }
  }

  // Uniform double in [0, 1).
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  // Exponential inter-arrival time with the given rate (> 0).
  double exponential(double rate) {
    return -std::log1p(-uniform01()) / rate;
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace dcres
