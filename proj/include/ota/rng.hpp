// rng.hpp - Deterministic random streams and samplers.
//
// Every stochastic component derives an independent stream from
// (root seed, stream indices) so results never depend on evaluation
// order or threading. Samplers are hand-rolled on top of a 53-bit
// uniform so that output sequences are stable across platforms and
// standard-library versions.

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ota {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// A counter-derived random stream: Rng(seed, i, j) and Rng(seed, i, k)
// are independent for j != k.
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::uint64_t s1 = 0, std::uint64_t s2 = 0,
                 std::uint64_t s3 = 0) {
        std::uint64_t st = seed;
        std::uint64_t mix = splitmix64(st);
        st ^= s1 * 0xD1342543DE82EF95ULL;
        mix ^= splitmix64(st);
        st ^= s2 * 0xDABA0B6EB09322DBULL;
        mix ^= splitmix64(st);
        st ^= s3 * 0x2545F4914F6CDD1DULL;
        std::seed_seq seq{mix, splitmix64(st), splitmix64(st), splitmix64(st)};
        gen_.seed(seq);
    }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    // Uniform in (a, b].
    double uniform(double a, double b) { return b - (b - a) * uniform01(); }

    // Standard normal via Box-Muller (no cached spare, one value per call).
    double gaussian() {
        double u1 = 1.0 - uniform01();  // (0, 1]
        double u2 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
    }

    double gaussian(double mean, double stddev) { return mean + stddev * gaussian(); }

    // Laplace(0, b) via inverse CDF.
    double laplace(double b) {
        double u = uniform01() - 0.5;
        double s = (u >= 0.0) ? 1.0 : -1.0;
        return -b * s * std::log(1.0 - 2.0 * std::fabs(u));
    }

    // Modulus of a unit-variance circularly symmetric complex Gaussian.
    double rayleigh_unit() {
        double re = gaussian() * 0.7071067811865475244;
        double im = gaussian() * 0.7071067811865475244;
        return std::sqrt(re * re + im * im);
    }

    // Unit-variance complex Gaussian as (re, im).
    std::pair<double, double> complex_gaussian_unit() {
        double re = gaussian() * 0.7071067811865475244;
        double im = gaussian() * 0.7071067811865475244;
        return {re, im};
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
};

}  // namespace ota
