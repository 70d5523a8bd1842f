// Deterministic random streams. Standard library distributions are
// implementation-defined, so samplers draw through these helpers instead to
// keep results bit-identical across standard libraries.

#ifndef ASC_RNG_H_
#define ASC_RNG_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace asc {

using Rng = std::mt19937_64;

// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t MixSeed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t DeriveSeed(std::uint64_t seed, std::uint64_t stream) {
  return MixSeed(seed ^ MixSeed(stream));
}

// FNV-1a; stable hash for keying per-document streams by name.
constexpr std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform double in [0, 1) with 53 random bits.
inline double UniformDouble(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n); bias is negligible for n << 2^53.
inline std::uint64_t UniformIndex(Rng& rng, std::uint64_t n) {
  return static_cast<std::uint64_t>(UniformDouble(rng) * static_cast<double>(n));
}

}  // namespace asc

#endif  // ASC_RNG_H_
