#pragma once

#include <cstdint>
#include <random>

namespace sgof {

using rng_t = std::mt19937_64;

/// SplitMix64 finalizer. Used to derive independent child seeds from a
/// parent seed and a stream index, so parallel work can be scheduled in any
/// order and still reproduce.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream) noexcept {
  return mix_seed(mix_seed(parent) ^ (stream * 0xd1342543de82ef95ULL + 1));
}

template <typename... Streams>
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t stream, Streams... rest) noexcept {
  return derive_seed(derive_seed(parent, stream), static_cast<std::uint64_t>(rest)...);
}

inline rng_t make_rng(std::uint64_t seed) { return rng_t{seed}; }

}  // namespace sgof
