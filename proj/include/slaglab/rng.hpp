#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace slaglab {

// Deterministic random source. Wraps std::mt19937_64 but does its own
// uniform and Gaussian transforms: std::normal_distribution is
// implementation-defined, and reports promise byte-identical output for a
// fixed seed and version.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : g_(seed) {}

    std::uint64_t bits() { return g_(); }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // Standard normal via Box-Muller with a cached spare.
    double gauss() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

    std::complex<double> complex_gauss() { return {gauss(), gauss()}; }

    // Uniform integer in [lo, hi], inclusive. Rejection sampling keeps it unbiased.
    std::int64_t integer(std::int64_t lo, std::int64_t hi) {
        std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
        if (range == 0) return static_cast<std::int64_t>(g_());  // full 64-bit span
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % range;
        std::uint64_t x;
        do {
            x = g_();
        } while (x >= limit);
        return lo + static_cast<std::int64_t>(x % range);
    }

private:
    std::mt19937_64 g_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace slaglab
