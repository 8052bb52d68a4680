#pragma once

#include <cstdint>

namespace chemo {

// Counter-based noise: every cell value is a pure function of (seed, i, j),
// so the field does not depend on traversal order or grid storage layout.

inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) keyed by (seed, i, j).
inline double cell_uniform01(std::uint64_t seed, int i, int j) {
    std::uint64_t h = mix64(seed ^ 0x8000000000000000ULL);
    h = mix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) + 1));
    h = mix64(h ^ (static_cast<std::uint64_t>(static_cast<std::uint32_t>(j)) + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

/// Uniform double in [-1/2, 1/2) keyed by (seed, i, j).
inline double cell_noise(std::uint64_t seed, int i, int j) {
    return cell_uniform01(seed, i, j) - 0.5;
}

} // namespace chemo
