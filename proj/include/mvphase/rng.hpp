#pragma once

#include <cmath>
#include <cstdint>

namespace mvphase::rng {

/// Stateless 64-bit mixer (murmur3 finalizer); bijective on uint64.
inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

/// Counter-based stream value: pure function of (seed, stream, counter), so
/// draws are reproducible independent of thread scheduling.
inline std::uint64_t counter_value(std::uint64_t seed, std::uint64_t stream,
                                   std::uint64_t counter) {
    constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = mix64(seed + kGolden * (stream + 1));
    return mix64(z + kGolden * (counter + 1));
}

/// Map 64 bits to (0, 1); never returns 0 so log(u) is safe.
inline double to_unit_open(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53 + 0x1.0p-54;
}

struct NormalPair {
    double z1;
    double z2;
};

/// Two independent standard normals via Box-Muller from counters
/// (2*counter, 2*counter + 1) of the given stream.
inline NormalPair normal_pair(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
    const double u1 = to_unit_open(counter_value(seed, stream, 2 * counter));
    const double u2 = to_unit_open(counter_value(seed, stream, 2 * counter + 1));
    const double r = std::sqrt(-2.0 * std::log(u1));
    constexpr double two_pi = 6.283185307179586476925286766559;
    return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

}  // namespace mvphase::rng
