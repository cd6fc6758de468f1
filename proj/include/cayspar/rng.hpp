#pragma once

#include <cstdint>

namespace cayspar {

/// SplitMix64: tiny counter-based generator used for all sampling decisions.
/// Every representative gets its own substream derived from (rootSeed, key),
/// so sampling outcomes do not depend on iteration order or thread count.
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1). Never returns 1, so probability-1 events
    /// always fire.
    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, bound) via rejection-free multiply-shift.
    std::uint64_t next_below(std::uint64_t bound) {
        return std::uint64_t((__uint128_t(next()) * bound) >> 64);
    }
};

/// Derives a substream seed from a root seed and a key (e.g. a generator
/// element index or a trial number).
inline std::uint64_t mix_seed(std::uint64_t root, std::uint64_t key) {
    SplitMix64 g(root ^ (0x9e3779b97f4a7c15ULL * (key + 1)));
    g.next();
    return g.next();
}

inline SplitMix64 substream(std::uint64_t root, std::uint64_t key) {
    return SplitMix64(mix_seed(root, key));
}

}  // namespace cayspar
