#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace spinrtn {

/// SplitMix64 finalizer (Steele, Lea, Flood 2014).
std::uint64_t splitmix64_mix(std::uint64_t z) noexcept;

/// Seed of the substream for trajectory `index` under `master_seed`.
/// Substreams are a pure function of the pair, so ensembles can be generated
/// in any order or in parallel with identical results.
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// xoshiro256** 1.0 (Blackman and Vigna), state filled from a SplitMix64
/// sequence started at the seed. Models UniformRandomBitGenerator.
class Xoshiro256 {
public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1): (k + 1/2) 2^-53 for the top 53 bits.
  double uniform_open() noexcept;

private:
  std::array<std::uint64_t, 4> s_;
};

}  // namespace spinrtn
