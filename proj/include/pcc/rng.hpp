// SPDX-License-Identifier: Apache-2.0
//
// Counter-based random numbers.
//
// Output for counter c under seed s:
//   key   = mix(s XOR 0x6A09E667F3BCC909)
//   bits  = mix(key + (c + 1) * 0x9E3779B97F4A7C15)      (mod 2^64)
//   mix(z): z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//           z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31
// which is the SplitMix64 finalizer evaluated at an arbitrary stream
// position. Any counter can be evaluated independently, so streams can be
// filled in parallel and reproduced bit for bit by other implementations.
//
// Uniforms take the top 53 bits. Normals use Box-Muller on the counter pair
// (2c, 2c + 1): u1 in (0, 1], u2 in [0, 1),
//   z0 = sqrt(-2 ln u1) cos(2 pi u2),  z1 = sqrt(-2 ln u1) sin(2 pi u2).

#pragma once

#include <cstdint>
#include <utility>

namespace pcc {

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) noexcept;

  static std::uint64_t mix(std::uint64_t z) noexcept;

  std::uint64_t bits(std::uint64_t counter) const noexcept;
  /// [0, 1)
  double uniform(std::uint64_t counter) const noexcept;
  /// (0, 1]
  double uniform_open_low(std::uint64_t counter) const noexcept;
  /// Two independent standard normals from counters 2c and 2c + 1.
  std::pair<double, double> normal_pair(std::uint64_t pair_index) const noexcept;

 private:
  std::uint64_t key_;
};

}  // namespace pcc
