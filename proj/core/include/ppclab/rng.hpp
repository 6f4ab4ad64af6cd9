#pragma once

// SplitMix64. The update and output mix are pinned so that every seeded run
// is reproducible bit for bit across platforms; tests carry known-answer
// vectors for it.

#include <cstdint>

namespace ppclab {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // next()/2^64 as binary64. The quotient can round up to 1.0 for draws
    // within 2^10 of 2^64; those are clamped to the largest double below 1
    // to keep outputs inside [0,1). Bias below 2^-53.
    double next_unit() {
        double v = static_cast<double>(next()) * 0x1p-64;
        if (v >= 1.0) v = 0x1.fffffffffffffp-1;
        return v;
    }

    std::uint64_t state() const { return state_; }

private:
    std::uint64_t state_;
};

}  // namespace ppclab
