#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace erasure {

/// Seeded random stream. mt19937_64 output is fixed by the standard, and the
/// conversions below avoid the implementation-defined std distributions, so a
/// seed reproduces the same draws on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Uniform index in [0, n) by rejection, unbiased.
    std::size_t index(std::size_t n)
    {
        const std::uint64_t bound = static_cast<std::uint64_t>(n);
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v = engine_();
        while (v >= limit) {
            v = engine_();
        }
        return static_cast<std::size_t>(v % bound);
    }

    /// Index drawn from non-negative weights summing to ~1.
    std::size_t categorical(std::span<const double> weights)
    {
        const double u = uniform();
        double acc = 0.0;
        std::size_t last = 0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            if (weights[i] <= 0.0) {
                continue;
            }
            acc += weights[i];
            last = i;
            if (u < acc) {
                return i;
            }
        }
        return last;
    }

    /// Independent child seed, for fanning work out deterministically.
    std::uint64_t derive_seed() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace erasure
