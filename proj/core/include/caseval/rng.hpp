#pragma once

#include <cmath>
#include <cstdint>

namespace caseval {

/// Counter-based generator in the SplitMix64 family. Every output is a pure
/// hash of (key, counter), so draw i of stream s is identical no matter which
/// thread or schedule produces it. Simulation code derives one stream per
/// trial from (master seed, trial index); serial and parallel runs agree
/// bit for bit.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
        : key_(mix(seed + 0x9E3779B97F4A7C15ull * (stream + 1))) {}

    std::uint64_t next_u64() {
        return mix(key_ + 0x9E3779B97F4A7C15ull * ++counter_);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return next_double() < p; }

    /// Box-Muller in trigonometric form: exactly two uniform draws per call,
    /// keeping the draw count (and thus the stream layout) deterministic.
    double normal(double mean = 0.0, double sd = 1.0) {
        double u1 = next_double();
        const double u2 = next_double();
        if (u1 < 0x1.0p-60) u1 = 0x1.0p-60;
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + sd * r * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

private:
    // SplitMix64 finalizer (Steele, Lea & Flood).
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace caseval
