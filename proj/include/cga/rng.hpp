#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace cga {

/// Random stream used throughout the library. mt19937_64 supports discard()
/// for jump-ahead; independent streams come from derive_seed() instead.
using Rng = std::mt19937_64;

/// Seed used by the tools when the caller does not supply one.
inline constexpr std::uint64_t kDefaultSeed = 0x5eed'c6a0'2023'0001ULL;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Derives a per-task seed from a base seed and a key path such as
/// {n, k_index, run}. The result depends only on the inputs, so tasks may be
/// executed in any order or on any thread.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::initializer_list<std::uint64_t> keys) noexcept {
    std::uint64_t h = mix64(base);
    for (std::uint64_t k : keys) {
        h = mix64(h ^ mix64(k + 0x632be59bd9b4e019ULL));
    }
    return h;
}

inline Rng make_stream(std::uint64_t seed) { return Rng{seed}; }

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

}  // namespace cga
