#pragma once

#include <cstdint>

namespace bockstein {

/// SplitMix64 (Steele, Lea and Flood; Vigna's reference constants). 64 bits of state,
/// a fixed golden-ratio increment and a variant of the MurmurHash3 finalizer.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t operator()() noexcept { return mix(state_ += kGamma); }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return ~std::uint64_t{0}; }

  /// Uniform on [0, bound) by rejection of the biased low tail. bound must be nonzero.
  constexpr std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const auto r = (*this)();
      if (r >= threshold)
        return r % bound;
    }
  }

  /// Independent stream for trial `index` under `seed`. Depends only on the pair, so
  /// trials can be dealt to workers in any order.
  static constexpr SplitMix64 stream(std::uint64_t seed, std::uint64_t index) noexcept {
    return SplitMix64(mix(seed ^ mix(index * kGamma + 0x632be59bd9b4e019ULL)));
  }

private:
  std::uint64_t state_;
};

} // namespace bockstein
