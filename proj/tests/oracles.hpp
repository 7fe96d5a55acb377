// Test-only oracles, independent of the library's production paths:
// high-resolution trapezoid quadrature, Monte-Carlo moment estimation and
// central finite differences.

#pragma once

#include <cmath>
#include <functional>

#include "ota/rng.hpp"
#include "ota/waveforms.hpp"

namespace oracle {

// Trapezoid integral of z^2 over [-window, window] with n points.
inline double energy_trapezoid(const ota::WaveformSpec& spec, double window, long n = 1000001) {
    double h = 2.0 * window / static_cast<double>(n - 1);
    double acc = 0.0;
    for (long i = 0; i < n; ++i) {
        double z = ota::sample(spec, -window + h * static_cast<double>(i));
        double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        acc += w * z * z;
    }
    return acc * h;
}

struct McMoment {
    double mean = 0.0;
    double std_err = 0.0;
};

// Monte-Carlo estimate of E[z^power(q + eps)], eps ~ N(0, sigma^2).
inline McMoment mc_moment(const ota::WaveformSpec& spec, int q, int power, double sigma,
                          long trials = 1000000, std::uint64_t seed = 1234) {
    ota::Rng rng(seed, 77);
    double sum = 0.0, sumsq = 0.0;
    for (long i = 0; i < trials; ++i) {
        double z = ota::sample(spec, q + rng.gaussian(0.0, sigma));
        double v = (power == 1) ? z : z * z;
        sum += v;
        sumsq += v * v;
    }
    McMoment m;
    m.mean = sum / static_cast<double>(trials);
    double var = (sumsq - trials * m.mean * m.mean) / static_cast<double>(trials - 1);
    m.std_err = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
    return m;
}

// Central finite difference of a scalar function.
inline double central_diff(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace oracle
