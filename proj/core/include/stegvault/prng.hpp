#pragma once

#include <cstdint>

namespace stegvault {

// SplitMix64. The single source of randomness for key generation, session
// secrets, RSA padding filler and the carrier permutation, so every derived
// artifact is reproducible from a 64-bit seed on any platform.
struct PrngStep {
  std::uint64_t state;
  std::uint64_t output;
};

constexpr PrngStep prng_next(std::uint64_t state) noexcept {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return {state, z ^ (z >> 31)};
}

class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    const PrngStep step = prng_next(state_);
    state_ = step.state;
    return step.output;
  }

  constexpr std::uint64_t operator()() noexcept { return next(); }
  constexpr std::uint64_t state() const noexcept { return state_; }

  static constexpr std::uint64_t min() noexcept { return 0; }
  static constexpr std::uint64_t max() noexcept { return ~std::uint64_t{0}; }

 private:
  std::uint64_t state_;
};

}  // namespace stegvault
