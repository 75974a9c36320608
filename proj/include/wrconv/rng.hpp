// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace wrconv {

using Engine = std::mt19937_64;

/// One step of the SplitMix64 sequence; advances `state`.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derives an independent stream seed from a master seed and a path of
/// stream indices (e.g. {cell, trial}). Pure function of its arguments, so
/// Monte Carlo results do not depend on how trials are scheduled.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
  std::uint64_t state = master;
  std::uint64_t out = splitmix64(state);
  for (std::uint64_t p : path) {
    state = out ^ (p + 0x632be59bd9b4e019ULL);
    out = splitmix64(state);
  }
  return out;
}

inline Engine make_engine(std::uint64_t seed) {
  std::uint64_t s = seed;
  return Engine(splitmix64(s));
}

}  // namespace wrconv
