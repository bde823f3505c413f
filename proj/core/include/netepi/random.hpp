#pragma once

#include <cstdint>
#include <random>

namespace netepi {

/// Engine used by every seeded component. mt19937_64 output is fixed by the
/// standard, so streams are reproducible across platforms and compilers.
using rng_t = std::mt19937_64;

/// One round of the splitmix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of run `run_index` in an ensemble: mix64(master ^ run_index).
constexpr std::uint64_t derive_run_seed(std::uint64_t master, std::uint64_t run_index) noexcept {
    return mix64(master ^ run_index);
}

/*
 * The standard distributions are implementation-defined, so the few we need
 * are spelled out here on top of the raw engine output.
 */

/// Uniform double in [0, 1) built from the top 53 bits.
inline double uniform01(rng_t& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(rng_t& rng, double p) {
    return uniform01(rng) < p;
}

/// Uniform integer in [0, bound) by rejection (no modulo bias).
inline std::uint64_t uniform_below(rng_t& rng, std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

}  // namespace netepi
