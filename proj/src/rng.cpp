// SPDX-License-Identifier: Apache-2.0

#include "pcc/rng.hpp"

#include <cmath>
#include <numbers>

namespace pcc {

namespace {

constexpr std::uint64_t kSeedSalt = 0x6A09E667F3BCC909ull;
constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ull;
constexpr double kTwoPow53Inv = 1.0 / 9007199254740992.0;

}  // namespace

CounterRng::CounterRng(std::uint64_t seed) noexcept : key_(mix(seed ^ kSeedSalt)) {}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
  z ^= z >> 30;
  z *= 0xBF58476D1CE4E5B9ull;
  z ^= z >> 27;
  z *= 0x94D049BB133111EBull;
  z ^= z >> 31;
  return z;
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept { return mix(key_ + (counter + 1) * kGoldenGamma); }

double CounterRng::uniform(std::uint64_t counter) const noexcept {
  return static_cast<double>(bits(counter) >> 11) * kTwoPow53Inv;
}

double CounterRng::uniform_open_low(std::uint64_t counter) const noexcept {
  return static_cast<double>((bits(counter) >> 11) + 1) * kTwoPow53Inv;
}

std::pair<double, double> CounterRng::normal_pair(std::uint64_t pair_index) const noexcept {
  const double u1 = uniform_open_low(2 * pair_index);
  const double u2 = uniform(2 * pair_index + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return {radius * std::cos(angle), radius * std::sin(angle)};
}

}  // namespace pcc
