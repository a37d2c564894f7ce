#pragma once

#include <complex>
#include <cstdint>

namespace oscillab {

/// Deterministic 64-bit generator (splitmix64). Used instead of <random>
/// distributions so that seeded experiments produce identical streams on
/// every platform and standard library.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform on the complex square [lo,hi] x i[lo,hi].
    std::complex<double> complex_uniform(double lo = -1.0, double hi = 1.0) {
        double re = uniform(lo, hi);
        double im = uniform(lo, hi);
        return {re, im};
    }

    /// Uniform point in the open disc of the given radius (rejection).
    void disc_point(double radius, double& x, double& y) {
        do {
            x = uniform(-radius, radius);
            y = uniform(-radius, radius);
        } while (x * x + y * y >= radius * radius);
    }

private:
    std::uint64_t state_;
};

}  // namespace oscillab
