#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace elroc {

using Rng = std::mt19937_64;

struct RngSeed {
  std::uint64_t value = 0;
};

// SplitMix64 finaliser.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for an independent stream identified by a path of indices below
// `seed`, e.g. (seed, replicate) or (seed, scenario, size, replicate). The
// stream depends only on the path, never on execution order.
inline RngSeed derive_seed(RngSeed seed, std::initializer_list<std::uint64_t> path) {
  std::uint64_t h = mix64(seed.value);
  for (std::uint64_t k : path) h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
  return {h};
}

inline Rng make_rng(RngSeed seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed.value),
                    static_cast<std::uint32_t>(seed.value >> 32)};
  return Rng(seq);
}

}  // namespace elroc
