#pragma once

#include <cstdint>

namespace designlab {

// Counter-based generator: every draw is a pure function of
// (seed, stream, counter), so parallel consumers never share state.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(key_ + mix(counter + 0x9e3779b97f4a7c15ULL));
  }

  // Uniform in [0, 1) with 53 random bits.
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) for bound < 2^53.
  constexpr std::uint64_t below(std::uint64_t counter, std::uint64_t bound) const noexcept {
    const auto v = static_cast<std::uint64_t>(uniform(counter) * static_cast<double>(bound));
    return v < bound ? v : bound - 1;
  }

  // SplitMix64 finalizer.
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t key_;
};

}  // namespace designlab
