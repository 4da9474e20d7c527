#pragma once

#include <cstdint>

namespace dlsa {

/// SplitMix64 finalizer. Full-avalanche, so chained applications give
/// independent streams from structured counters.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based draw: every (seed, slot, stream) tuple maps to one fixed
/// 64-bit value, independent of evaluation order. `stream` identifies the
/// consumer (e.g. a directed link index).
inline uint64_t counter_hash(uint64_t seed, uint64_t slot, uint64_t stream) {
    uint64_t h = splitmix64(seed);
    h = splitmix64(h ^ slot);
    h = splitmix64(h ^ stream);
    return h;
}

/// Map a 64-bit draw to a double in [0, 1) with 53 uniform bits.
inline double unit_double(uint64_t h) {
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double stateless_uniform(uint64_t seed, uint64_t slot, uint64_t stream) {
    return unit_double(counter_hash(seed, slot, stream));
}

}  // namespace dlsa
