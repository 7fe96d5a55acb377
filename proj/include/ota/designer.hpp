// designer.hpp - Pulse design by training a small MLP under a composite
// loss: expected aggregation error (timing-error expectation taken through
// a discretized PMF so gradients survive), a spectral mask penalty, a
// spectral-mean energy penalty and a time-symmetry penalty.
//
// The network maps one transmission context u = [a, b, h, x0] (3K+1 reals)
// to the N_s pulse samples shared by all devices. After training, the
// deployed pulse is the element-wise mean of the outputs over a test set,
// optionally compressed to a 7-term cosine series by least squares.

#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "ota/waveforms.hpp"

namespace ota {

struct DesignConfig {
    int K = 20;
    int samples_per_symbol = 500;  // desk scale: 50
    int mu = 6;
    double delta_alpha = 0.1;      // roll-off resolution of the spectral grid
    double alpha = 0.5;            // target roll-off
    double gamma_thr = 0.2;        // spectral mask level
    double penalty_f = 22.4;
    double penalty_e = 9000.0;
    double penalty_s = 4300.0;
    double energy_target = 0.0;    // <= 0: spectral mean of BTRC at same alpha/grid
    std::vector<int> hidden = {256, 256, 256};
    int batch = 100;
    int epochs = 10;
    long n_train = 50000;          // desk scale: 5000
    long n_val = 5000;             // desk scale: 500
    long n_test = 50000;           // desk scale: 5000
    double adam_lr = 1e-3;
    double adam_beta1 = 0.9;
    double adam_beta2 = 0.999;
    double adam_eps = 1e-8;
    double sigma_eps = 0.1;
    double snr_db = 10.0;
    double P = 1.0;
    std::uint64_t seed = 1;

    int n_samples() const { return samples_per_symbol * (mu + 1) + 1; }
    double sigma2() const;
    void set_desk_scale();
    void validate() const;
};

// ReLU hidden layers plus a linear output layer. weights[l] is
// (out x in); forward input width is 3K+1, output width N_s.
struct MLPParams {
    std::vector<Eigen::MatrixXd> weights;
    std::vector<Eigen::VectorXd> biases;

    long parameter_count() const;
};

struct LossBreakdown {
    double l_mse = 0.0;
    double l_f = 0.0;
    double l_e = 0.0;
    double l_s = 0.0;
    double total = 0.0;
};

struct TrainSample {
    Eigen::VectorXd u;   // [a, b_1..K, h_1..K, x0_1..K], channels ascending
    double r = 0.0;      // sum of the current-symbol data
    Eigen::MatrixXd x;   // K x (mu+1) data, column q + mu/2
    double noise = 0.0;  // receiver noise draw for this sample
};

struct EpochStats {
    LossBreakdown train_mean;
    double val_total = 0.0;
};

struct TrainResult {
    MLPParams params;
    std::vector<EpochStats> history;
    std::vector<TrainSample> test_set;
};

// Truncated Gaussian PMF over sample offsets |m| <= (N_s-1)/(2(mu+1)),
// renormalized to sum 1. Index i maps to offset m = i - support_half.
std::vector<double> sync_error_pmf(double sigma_eps, int n_samples, int mu);

// Padding samples needed for spectral resolution delta_alpha/2 cycles per
// period: max(0, round((2/delta_alpha - mu - 1) * samples_per_symbol)).
int zero_pad_count(double delta_alpha, int mu, int samples_per_symbol);

// First one-sided DFT bin strictly after the occupied band:
// round(1/delta_alpha) + round(alpha/delta_alpha) + 1. alpha must sit on
// the delta_alpha grid.
int mask_start_bin(double alpha, double delta_alpha);

MLPParams init_params(const DesignConfig& cfg, std::uint64_t seed);

// One shared pulse per forward pass.
Eigen::VectorXd forward(const MLPParams& params, const Eigen::VectorXd& u);

// Batch-mean loss; if grad is non-null, accumulates d(total)/d(params)
// into it (same shapes as params). Weights follow cfg.penalty_*.
LossBreakdown loss_total(const MLPParams& params, const std::vector<TrainSample>& batch,
                         const std::vector<double>& pmf, const DesignConfig& cfg,
                         MLPParams* grad = nullptr);

// Deterministic dataset generation; `tag` separates train/val/test streams.
std::vector<TrainSample> make_dataset(const DesignConfig& cfg, long count, std::uint64_t tag);

// Minibatch Adam on loss_total. Throws std::runtime_error if the loss
// stops being finite.
TrainResult train(const DesignConfig& cfg);

// Element-wise mean of forward outputs over the given inputs.
WaveformSpec extract_waveform(const MLPParams& params, const std::vector<TrainSample>& inputs,
                              const DesignConfig& cfg);

struct CosineFit {
    std::array<double, 7> coeffs{};
    double p = 0.0;
    double rmse = 0.0;
};

// Least-squares cosine-series fit: for each rate p on a coarse grid
// (refined by golden-section search), solve the linear problem for the
// seven coefficients; keep the global best.
CosineFit fit_cosine(const WaveformSpec& sampled);

void write_training_curve_csv(const std::vector<EpochStats>& history, const std::string& path);
void write_fit_keyvalues(const CosineFit& fit, const std::string& path);

}  // namespace ota
