#pragma once

#include <cstdint>
#include <limits>

#include "flagnet/errors.hpp"

namespace flagnet {

/// SplitMix64 generator. Hand-rolled rather than <random> because the
/// standard distributions are not bit-reproducible across libraries,
/// and seeded runs must reproduce byte-for-byte everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        return scramble_(state_);
    }

    /// Uniform draw from [0, bound); unbiased via rejection.
    std::uint32_t below(std::uint32_t bound) {
        if (bound == 0) throw DomainError("empty range");
        const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
        const std::uint64_t rem = (max % bound + 1) % bound;
        const std::uint64_t limit = max - rem;
        std::uint64_t v = next();
        while (v > limit) v = next();
        return static_cast<std::uint32_t>(v % bound);
    }

    /// True with probability p (53-bit resolution). p outside [0,1] clamps.
    bool bernoulli(double p) {
        const double u = static_cast<double>(next() >> 11) * 0x1.0p-53;
        return u < p;
    }

    /// Stateless derivation of a child seed, e.g. one per trial index.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t index) {
        return scramble_(seed + 0x9e3779b97f4a7c15ull * (index + 1));
    }

private:
    static std::uint64_t scramble_(std::uint64_t z) {
        z ^= z >> 30;
        z *= 0xbf58476d1ce4e5b9ull;
        z ^= z >> 27;
        z *= 0x94d049bb133111ebull;
        z ^= z >> 31;
        return z;
    }

    std::uint64_t state_;
};

}  // namespace flagnet
