#pragma once

/// Deterministic PRNG for the verification suites. SplitMix64 with the usual
/// constants; every sample gets its own stream derived from (seed, index), so
/// reports are reproducible byte for byte and independent of sample order.

#include <cstdint>

namespace wildram {

inline uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

class SplitMix64 {
public:
    explicit SplitMix64(uint64_t state) : s_(state) {}

    uint64_t next() {
        s_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = s_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n). Uses reduction mod n; the bias for the n used here
    /// (single-digit moduli against 2^64) is far below anything observable.
    uint64_t below(uint64_t n) { return next() % n; }

private:
    uint64_t s_;
};

/// Independent per-sample stream: two mixing rounds over (seed, index).
inline SplitMix64 sample_rng(uint64_t seed, uint64_t index) {
    return SplitMix64(mix64(seed ^ mix64(index + 0x9e3779b97f4a7c15ULL)));
}

} // namespace wildram
