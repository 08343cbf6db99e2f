#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace svplab {

// Seeded randomness handle. All draws go through explicit helpers built on
// the raw 64-bit stream so that a given seed reproduces the same sequence
// regardless of which std::*_distribution the platform ships.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t raw() { return gen_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform integer in [0, bound), bound >= 1. Rejection keeps it unbiased.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return x % bound;
    }

    // Standard normal via Box-Muller; no cached second value, so the draw
    // count per call is fixed and runs stay reproducible.
    double gaussian() {
        double u;
        do {
            u = uniform();
        } while (u <= 0.0);
        const double v = uniform();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(6.283185307179586476925286766559 * v);
    }

    bool bernoulli(double p) { return uniform() < p; }

private:
    std::mt19937_64 gen_;
};

} // namespace svplab
