#pragma once

#include <cstdint>

namespace dscent {

/// 64-bit finalizer (murmur3 style): bijective avalanche mix.
inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

/// Stream key for one (simulation seed node, run index) pair. The key
/// schedule is part of the reproducibility contract: results must not
/// depend on execution order or thread count.
inline std::uint64_t run_stream_key(std::uint64_t rng_seed, std::uint64_t seed_node,
                                    std::uint64_t run_index) {
    std::uint64_t h = mix64(rng_seed ^ (0x9e3779b97f4a7c15ULL + seed_node));
    return mix64(h ^ (0xd1b54a32d192ed03ULL + run_index));
}

/// SplitMix64 stream.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return next_unit() < p; }

    /// Uniform integer in [0, bound) by rejection-free scaling (bound small
    /// relative to 2^64; bias is negligible for test-size bounds).
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(next_unit() * static_cast<double>(bound));
    }

private:
    std::uint64_t state_;
};

} // namespace dscent
