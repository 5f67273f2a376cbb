#pragma once

#include <cstdint>

namespace lumifuse {

// SplitMix64 (Steele/Lea/Flood 2014) used as a pure counter generator:
// output i of stream `key` is mix(key + (i+1)*gamma). Integer-only, so the
// stream is bit-identical on every platform.
inline uint64_t splitmix64(uint64_t key, uint64_t index) {
    uint64_t z = key + (index + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Derive an independent stream key.
inline uint64_t derive_key(uint64_t key, uint64_t tag) {
    return splitmix64(key, tag);
}

// Uniform double in [0,1) from the top 53 bits.
inline double uniform01(uint64_t key, uint64_t index) {
    return static_cast<double>(splitmix64(key, index) >> 11) * 0x1.0p-53;
}

// Approximate standard normal: Irwin-Hall sum of 12 uniforms, clamped to
// +-4. Only additions of exact doubles, hence portable bit-for-bit.
inline double gaussian01(uint64_t key, uint64_t index) {
    double s = 0.0;
    for (uint64_t k = 0; k < 12; ++k) {
        s += uniform01(key, index * 12 + k);
    }
    s -= 6.0;
    if (s > 4.0) s = 4.0;
    if (s < -4.0) s = -4.0;
    return s;
}

}  // namespace lumifuse
