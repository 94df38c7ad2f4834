#pragma once

#include <cstdint>

namespace chainflux {

// Counter-based generator in the splitmix64 family. Every output is a pure
// function of (seed, stream, counter), so independent streams can be drawn
// in any order, or in parallel, without changing a single value.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed + kGolden * (stream + 1))) {}

  std::uint64_t next_u64() { return mix(key_ + kGolden * ++counter_); }

  // Uniform in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ull;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace chainflux
