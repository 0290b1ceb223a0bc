#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace kld {

/// The single pseudo-random engine used everywhere: 64-bit Mersenne Twister
/// (std::mt19937_64), whose output sequence is fixed by the C++ standard.
///
/// The distributions below are written out by hand because the standard
/// library distributions are allowed to differ between implementations,
/// which would break replay of an experiment from its seed.
using Rng = std::mt19937_64;

/// Uniform double in [0,1) with 53 random bits.
inline double uniform01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, bound), unbiased by rejection. bound must be > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t draw = rng();
    while (draw >= limit) draw = rng();
    return draw % bound;
}

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

/// Child seed for stream (a, b) of a parent seed:
/// mix64(mix64(mix64(parent) ^ a) ^ b). Used for restart and replicate seeds.
constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t a, std::uint64_t b) noexcept {
    return mix64(mix64(mix64(parent) ^ a) ^ b);
}

}  // namespace kld
