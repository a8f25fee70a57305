#pragma once

#include <bit>
#include <cstdint>

namespace hybridcc {

// Seeded 64-bit avalanche mixer (splitmix64 finalizer). Treated as an ideal
// hash family: every distinct seed selects an independent-looking function.
inline constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

inline constexpr std::uint64_t hash64(std::uint64_t key, std::uint64_t seed) {
  return mix64(key ^ mix64(seed + 0x9e3779b97f4a7c15ULL));
}

inline constexpr std::uint32_t ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(x - 1));
}

}  // namespace hybridcc
