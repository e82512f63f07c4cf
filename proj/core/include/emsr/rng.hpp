#pragma once

// Counter-based pseudorandom generator: the output word at index i is a
// pure function of (seed, i) (splitmix64 finalizer over a Weyl sequence),
// so any shot, grid point or trial can be generated independently of
// evaluation order or thread count, and substreams can be derived without
// coordination.

#include <cstdint>

namespace emsr {

namespace detail {
inline constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}
}  // namespace detail

class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) : seed_(seed) {}

  constexpr std::uint64_t word(std::uint64_t index) const {
    return detail::mix64(seed_ + (index + 1) * detail::golden_gamma);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform(std::uint64_t index) const {
    return double(word(index) >> 11) * 0x1.0p-53;
  }

  /// Derived substream; stream 0, 1, ... give decorrelated child seeds.
  constexpr CounterRng stream(std::uint64_t stream_index) const {
    return CounterRng(detail::mix64(seed_ ^ detail::mix64(
                          (stream_index + 1) * detail::golden_gamma)));
  }

  constexpr std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

}  // namespace emsr
