#pragma once

#include <cstdint>
#include <random>

#include "cyberlab/graph.hpp"

namespace cyberlab {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed of stream `stream` under `master`. Streams are addressed by counter
/// (run index, round, instance...) so results never depend on which worker
/// consumed which stream.
constexpr Seed derive_seed(Seed master, std::uint64_t stream) noexcept {
    return Seed{mix64(mix64(master.value) ^ mix64(stream + 0x632be59bd9b4e019ULL))};
}

inline Rng make_rng(Seed seed) { return Rng(mix64(seed.value)); }
inline Rng make_rng(Seed master, std::uint64_t stream) { return make_rng(derive_seed(master, stream)); }

/// Uniform double in [0, 1).
inline double uniform01(Rng& rng) { return std::generate_canonical<double, 53>(rng); }

}  // namespace cyberlab
