#pragma once

#include <cstdint>
#include <random>

namespace vvrf {

using Rng = std::mt19937_64;

// Finalizer-style 64-bit mixer (splitmix64 increment + mix).
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream seed for sample `index` under a 64-bit master seed.
// Splitting rule: stream seed = master ^ splitmix64(index).
inline std::uint64_t streamSeed(std::uint64_t master, std::uint64_t index) {
  return master ^ splitmix64(index);
}

inline Rng makeStream(std::uint64_t master, std::uint64_t index) {
  return Rng(streamSeed(master, index));
}

}  // namespace vvrf
