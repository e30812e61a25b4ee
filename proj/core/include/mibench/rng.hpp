#pragma once

#include <cstdint>
#include <random>

namespace mibench {

/// Engine used for every stochastic operation. mt19937_64 has a fully
/// specified output sequence, so seeded runs agree across platforms.
using Engine = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Seed for the substream identified by (master, a, b), e.g. (seed, N, replicate).
/// Depends only on its arguments, never on execution order.
constexpr std::uint64_t substream_seed(std::uint64_t master, std::uint64_t a,
                                       std::uint64_t b) noexcept {
  return mix64(mix64(mix64(master) ^ a) ^ (b + 0x632be59bd9b4e019ULL));
}

}  // namespace mibench
