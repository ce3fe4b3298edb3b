#pragma once

#include <cstdint>
#include <random>

namespace spdc {

/// SplitMix64 finaliser (Steele, Lea & Flood 2014). Bijective on 64 bits.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Seed of realization `index` in the ensemble rooted at `base_seed`:
/// splitmix64(splitmix64(base_seed) ^ splitmix64(index + golden)). Depends only
/// on the pair, so realizations can be generated in any order or in parallel.
std::uint64_t child_seed(std::uint64_t base_seed, std::uint64_t index);

/// Stream generator used for every stochastic draw: mt19937_64 seeded with a
/// seed_seq expanded from the 64-bit seed.
using Generator = std::mt19937_64;
Generator make_generator(std::uint64_t seed);

}  // namespace spdc
