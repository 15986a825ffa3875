#pragma once

#include <cstdint>

#include "anderson/types.hpp"

namespace anderson {

// Counter-based generator: draw i of stream (master, stream) is
// mix64(key + (i+1) * golden), with key derived from both seed words.
// Any (seed, i) can be evaluated independently, so parallel consumers
// never share state and the output is identical on every platform.
class CounterRng {
 public:
  explicit CounterRng(Seed seed)
      : key_(mix64(seed.master ^ mix64(seed.stream + 0x632BE59BD9B4E019ULL))) {}

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t at(std::uint64_t index) const { return mix64(key_ + (index + 1) * kGolden); }
  std::uint64_t next() { return at(counter_++); }

  /// Uniform on [0,1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  /// Uniform on the open interval (0,1).
  double uniform_open() { return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53; }

  std::uint64_t position() const { return counter_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace anderson
