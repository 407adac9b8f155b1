#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace slice {

// SplitMix64 finalizer; used to derive independent stream keys.
std::uint64_t mix64(std::uint64_t x);

// Stream key for (seed, tag, set), so estimates depend only on their own
// identity, never on call order.
std::uint64_t stream_key(std::uint64_t seed, std::uint64_t tag,
                         const std::vector<int>& set);

// mt19937_64 with portable bounded sampling (the std distributions are
// implementation-defined; these are not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform on [0, bound); bound >= 1.  Rejection sampling, no modulo bias.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform on [0, 1) with 53 random bits.
  double uniform_unit() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace slice
