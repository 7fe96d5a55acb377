// waveforms.hpp - Pulse definitions, evaluation, energy and spectrum.
//
// All pulses use a normalized symbol period T = 1 and unit-peak scaling,
// i.e. the raised cosine satisfies z(0) = 1. Time is in symbol periods
// throughout.

#pragma once

#include <array>
#include <string>
#include <vector>

namespace ota {

enum class WaveformKind { RC, BTRC, FittedCosine, Sampled };

// A closed-form or sampled pulse. Which fields are meaningful depends on
// `kind`:
//   RC / BTRC     : alpha (roll-off in [0, 1])
//   FittedCosine  : coeffs a0..a6 and angular rate p > 0 (rad per symbol
//                   period), valid inside +-window_half, zero outside
//   Sampled       : odd-length `samples` on a uniform grid of step dt,
//                   centered on t = 0
struct WaveformSpec {
    WaveformKind kind = WaveformKind::RC;
    double alpha = 0.0;
    std::array<double, 7> coeffs{};
    double p = 0.0;
    double window_half = 3.5;
    std::vector<double> samples;
    double dt = 0.0;

    static WaveformSpec rc(double alpha);
    static WaveformSpec btrc(double alpha);
    static WaveformSpec fitted_cosine(const std::array<double, 7>& coeffs, double p,
                                      double window_half = 3.5);
    static WaveformSpec sampled(std::vector<double> samples, double dt);

    // Fitted-cosine presets for the learned pulse family at roll-off
    // 0.2 / 0.5 / 0.8 (coefficient sets shipped with the library).
    static WaveformSpec fitted_preset(double alpha);
    static bool has_fitted_preset(double alpha);

    std::string name() const;
};

// Throws std::invalid_argument if the spec violates its invariants.
void validate(const WaveformSpec& spec);

// Evaluate z(t). Removable singularities (RC at t = +-1/(2 alpha), BTRC at
// alpha = 0) are handled by their analytic limits. Sampled pulses linearly
// interpolate inside their window and return 0 outside.
double sample(const WaveformSpec& spec, double t);

// Numerical energy integral of z^2 over [-window, +window], composite
// Simpson rule with at least 1000 points per symbol period.
double energy(const WaveformSpec& spec, double window);

// Discretize on a grid of samples_per_symbol points per period covering
// mu + 1 periods: N_s = samples_per_symbol * (mu + 1) + 1 samples over
// [-(mu+1)/2, +(mu+1)/2], center sample at t = 0. mu must be even.
WaveformSpec discretize(const WaveformSpec& spec, int samples_per_symbol, int mu);

struct SpectrumReport {
    std::vector<double> magnitudes;  // one-sided bins 0..Nyquist of the real-input DFT
    double df = 0.0;                 // bin spacing in cycles per symbol period
    int occupied_bins = 0;           // bins with magnitude above the given threshold
    double out_of_band_max = 0.0;    // max magnitude at bins >= mask_start (0 if no mask given)
};

// DFT magnitude of the zero-padded sample sequence. `threshold` feeds
// occupied_bins; `mask_start` (one-sided bin index, -1 = none) feeds
// out_of_band_max.
SpectrumReport spectrum(const WaveformSpec& sampled, int zero_pad_count,
                        double threshold = 0.2, int mask_start = -1);

// CSV with header "t,z".
void write_waveform_csv(const WaveformSpec& sampled, const std::string& path);
WaveformSpec read_waveform_csv(const std::string& path);

// CSV with header "bin,frequency,magnitude".
void write_spectrum_csv(const SpectrumReport& report, const std::string& path);

}  // namespace ota
