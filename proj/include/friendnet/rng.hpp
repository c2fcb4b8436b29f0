#pragma once

#include <cassert>
#include <cstdint>
#include <random>

namespace friendnet {

/// Deterministic random source. All distribution draws are implemented here
/// on top of the raw mt19937_64 stream so that results are bit-identical
/// across platforms and standard library versions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    bool bernoulli(double prob) { return uniform01() < prob; }

    /// Unbiased uniform integer in [0, n). Rejection sampling, no modulo bias.
    std::uint64_t below(std::uint64_t n) {
        assert(n > 0);
        const std::uint64_t residue = (0 - n) % n;  // 2^64 mod n
        for (;;) {
            const std::uint64_t x = engine_();
            if (residue == 0 || x < 0 - residue) return x % n;
        }
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace friendnet
