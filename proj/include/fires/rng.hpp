#pragma once

// Deterministic stream derivation. Every randomized component pulls from a
// named substream keyed by (master seed, tag, indices), so results reproduce
// bit-identically no matter how work is scheduled across threads.

#include <cstdint>
#include <random>

namespace fires::rng {

// Substream tags. Keep values stable; they are part of the reproducibility
// contract between runs.
inline constexpr std::uint64_t kInit = 0x11;
inline constexpr std::uint64_t kUpdate = 0x22;
inline constexpr std::uint64_t kChannel = 0x33;
inline constexpr std::uint64_t kValidation = 0x44;

// splitmix64 finalizer
constexpr std::uint64_t mix(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0,
                               std::uint64_t b = 0) noexcept {
  std::uint64_t h = mix(seed);
  h = mix(h ^ tag);
  h = mix(h ^ a);
  h = mix(h ^ b);
  return h;
}

inline std::mt19937_64 stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a = 0,
                              std::uint64_t b = 0) {
  return std::mt19937_64(derive(seed, tag, a, b));
}

}  // namespace fires::rng
