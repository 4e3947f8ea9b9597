#pragma once

#include <cstdint>
#include <random>

namespace mlwalk {

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Seed of stream `stream` under master seed `seed`. Streams are independent
// of evaluation order, so trial k always sees the same numbers no matter how
// trials are scheduled.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Portable seeded generator. mt19937_64 output is fixed by the standard and
// uniform() is computed here rather than through <random> distributions,
// whose algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mlwalk
