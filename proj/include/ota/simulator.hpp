// simulator.hpp - Monte-Carlo evaluation of the aggregation MSE.
//
// Per trial: draw block-fading channels, allocate power from the moments
// of the chosen pulse, draw per-device data across the interfering symbol
// window, draw timing errors and noise, form the received sample and
// accumulate the squared error against the ideal sum. Every trial derives
// its own random stream from (seed, trial index) so results are identical
// regardless of evaluation order.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ota/allocation.hpp"
#include "ota/moments.hpp"
#include "ota/rng.hpp"
#include "ota/waveforms.hpp"

namespace ota {

enum class DataDist { UniformSqrt3, GaussianUnit, LaplaceUnit };
enum class CsiMode { Perfect, Noisy };
enum class ErrorMode { PerDevice, ReceiverEquivalent };

struct ScenarioConfig {
    int K = 20;
    double snr_db = 10.0;      // transmit SNR P/sigma^2 in dB
    double P = 1.0;            // per-device power bound (pulse energy folded in)
    double sigma_eps = 0.1;    // timing-error std in symbol periods
    int mu = 6;                // interfering symbols (even, 0 = none)
    DataDist data_dist = DataDist::UniformSqrt3;
    CsiMode csi = CsiMode::Perfect;
    ErrorMode error_mode = ErrorMode::PerDevice;
    long trials = 100000;
    std::uint64_t seed = 1;

    double sigma2() const;     // noise power P / 10^(snr_db/10)
    void validate() const;
};

struct MseEstimate {
    double mean = 0.0;
    double std_err = 0.0;
    long trials = 0;
};

// K channel magnitudes (modulus of unit-variance complex Gaussians),
// sorted ascending.
ChannelRealization draw_channels(int K, Rng& rng);

MseEstimate simulate_mse(const ScenarioConfig& cfg, const WaveformSpec& spec);

// Same empirical mean via the closed-form MSE evaluated on each trial's
// channel draw (expectation over data, timing errors and noise taken
// analytically). Shares the channel stream with simulate_mse.
MseEstimate simulate_mse_closed_form(const ScenarioConfig& cfg, const WaveformSpec& spec);

// Runs the per-device and single-receiver-error modes on independent
// streams; the two estimates agree within Monte-Carlo noise.
std::pair<MseEstimate, MseEstimate> equivalence_check(const ScenarioConfig& cfg,
                                                      const WaveformSpec& spec);

enum class SweepAxis { K, SnrDb, Alpha, SigmaEps };

struct SweepRow {
    double axis_value = 0.0;
    std::string waveform;
    double mse = 0.0;
    double std_err = 0.0;
    long trials = 0;
};

// One row per (axis value, waveform); per-point seeds derive from the
// template's root seed and the point indices.
std::vector<SweepRow> sweep(const ScenarioConfig& cfg_template, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<WaveformSpec>& specs);

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path);

const char* to_string(DataDist d);
const char* to_string(CsiMode c);
const char* to_string(ErrorMode e);

}  // namespace ota
