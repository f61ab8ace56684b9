// Copyright (c) 2026 occscene contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>

namespace occscene {

// Counter-based random streams. Every draw is a pure function of
// (seed, counter), so parallel consumers produce identical values no matter
// how work is scheduled.

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t v) {
  return splitmix64(seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2)));
}

/// Uniform draw in (0, 1); never returns exactly 0 so log() stays finite.
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t h = splitmix64(splitmix64(seed) ^ splitmix64(counter * 0xda942042e4dd58b5ull + 1));
  return (static_cast<double>(h >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

/// Standard normal draw via Box-Muller on two counter-derived uniforms.
inline double normal01(std::uint64_t seed, std::uint64_t counter) {
  double u1 = uniform01(seed, 2 * counter);
  double u2 = uniform01(seed, 2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace occscene
