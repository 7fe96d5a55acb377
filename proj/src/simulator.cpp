#include "ota/simulator.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ota {

namespace {

// Kahan-compensated accumulator so trial order never affects the result.
struct CompensatedSum {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

double draw_data(DataDist d, Rng& rng) {
    switch (d) {
        case DataDist::UniformSqrt3:
            return (2.0 * rng.uniform01() - 1.0) * 1.7320508075688772935;
        case DataDist::GaussianUnit:
            return rng.gaussian();
        case DataDist::LaplaceUnit:
            return rng.laplace(0.7071067811865475244);
    }
    throw std::logic_error("unreachable");
}

struct TrialChannels {
    std::vector<double> alloc_mag;  // magnitudes the allocator sees
    std::vector<double> applied;    // real effective gains on the signal
};

// Stream 0 of a trial holds everything the allocator sees, so the
// closed-form path can replay it without consuming the data/noise stream.
TrialChannels draw_trial_channels(const ScenarioConfig& cfg, Rng& rng) {
    TrialChannels ch;
    ch.alloc_mag.resize(static_cast<size_t>(cfg.K));
    ch.applied.resize(static_cast<size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k) {
        auto [re, im] = rng.complex_gaussian_unit();
        double mag = std::sqrt(re * re + im * im);
        if (cfg.csi == CsiMode::Perfect) {
            ch.alloc_mag[static_cast<size_t>(k)] = mag;
            ch.applied[static_cast<size_t>(k)] = mag;
        } else {
            // Estimate h' = h + e, e ~ CN(0, sigma2/P). The device
            // pre-compensates the estimated phase; the residual phase error
            // leaves Re{h e^{-j arg h'}} on the real axis.
            double err_std = std::sqrt(cfg.sigma2() / cfg.P);
            auto [ere, eim] = rng.complex_gaussian_unit();
            double hre = re + err_std * ere, him = im + err_std * eim;
            double est_mag = std::sqrt(hre * hre + him * him);
            ch.alloc_mag[static_cast<size_t>(k)] = std::max(est_mag, 1e-12);
            ch.applied[static_cast<size_t>(k)] = (re * hre + im * him) / std::max(est_mag, 1e-12);
        }
    }
    return ch;
}

PowerAllocation allocate(const ScenarioConfig& cfg, const WaveformMoments& m,
                         const ChannelRealization& h) {
    if (cfg.mu == 0) return solve_no_isi(m.eps_check, m.eps_tilde.at(0), h, cfg.P, cfg.sigma2());
    return solve_isi(m, h, cfg.P, cfg.sigma2());
}

MseEstimate finish(const CompensatedSum& sum, const CompensatedSum& sumsq, long n) {
    MseEstimate est;
    est.trials = n;
    est.mean = sum.sum / static_cast<double>(n);
    if (n > 1) {
        double var = (sumsq.sum - static_cast<double>(n) * est.mean * est.mean) /
                     static_cast<double>(n - 1);
        est.std_err = std::sqrt(std::max(0.0, var) / static_cast<double>(n));
    }
    return est;
}

}  // namespace

double ScenarioConfig::sigma2() const { return P / std::pow(10.0, snr_db / 10.0); }

void ScenarioConfig::validate() const {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    if (mu < 0 || mu % 2 != 0) throw std::invalid_argument("mu must be even");
    if (sigma_eps < 0.0) throw std::invalid_argument("sigma_eps must be >= 0");
    if (!(P > 0.0)) throw std::invalid_argument("P must be > 0");
}

ChannelRealization draw_channels(int K, Rng& rng) {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    std::vector<double> mags(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) mags[static_cast<size_t>(k)] = rng.rayleigh_unit();
    return ChannelRealization(std::move(mags));
}

MseEstimate simulate_mse(const ScenarioConfig& cfg, const WaveformSpec& spec) {
    cfg.validate();
    ota::validate(spec);
    const WaveformMoments moms = all_moments(spec, cfg.sigma_eps, cfg.mu);
    const double sigma2 = cfg.sigma2();
    const double noise_std = std::sqrt(sigma2);
    const int qmax = cfg.mu / 2;

    CompensatedSum sum, sumsq;
    std::vector<double> x(static_cast<size_t>(cfg.K) * static_cast<size_t>(2 * qmax + 1));
    for (long t = 0; t < cfg.trials; ++t) {
        Rng ch_rng(cfg.seed, static_cast<std::uint64_t>(t), 0);
        TrialChannels ch = draw_trial_channels(cfg, ch_rng);
        ChannelRealization h_alloc(ch.alloc_mag);
        PowerAllocation alloc = allocate(cfg, moms, h_alloc);
        std::vector<double> b = alloc.b_original_order(h_alloc);

        Rng rng(cfg.seed, static_cast<std::uint64_t>(t), 1);
        for (int k = 0; k < cfg.K; ++k)
            for (int qi = 0; qi <= 2 * qmax; ++qi)
                x[static_cast<size_t>(k * (2 * qmax + 1) + qi)] = draw_data(cfg.data_dist, rng);

        double shared_eps = 0.0;
        if (cfg.error_mode == ErrorMode::ReceiverEquivalent)
            shared_eps = rng.gaussian(0.0, cfg.sigma_eps);

        double acc = 0.0, target = 0.0;
        for (int k = 0; k < cfg.K; ++k) {
            double eps = (cfg.error_mode == ErrorMode::PerDevice)
                             ? rng.gaussian(0.0, cfg.sigma_eps)
                             : shared_eps;
            double gain = b[static_cast<size_t>(k)] * ch.applied[static_cast<size_t>(k)];
            for (int q = -qmax; q <= qmax; ++q) {
                double xkq = x[static_cast<size_t>(k * (2 * qmax + 1) + (q + qmax))];
                acc += xkq * sample(spec, q + eps) * gain;
                if (q == 0) target += xkq;
            }
        }
        double noise = rng.gaussian(0.0, noise_std);
        double y = alloc.a * (acc + noise);
        double err = y - target;
        sum.add(err * err);
        sumsq.add(err * err * err * err);
    }
    return finish(sum, sumsq, cfg.trials);
}

MseEstimate simulate_mse_closed_form(const ScenarioConfig& cfg, const WaveformSpec& spec) {
    cfg.validate();
    ota::validate(spec);
    const WaveformMoments moms = all_moments(spec, cfg.sigma_eps, cfg.mu);
    const double sigma2 = cfg.sigma2();

    CompensatedSum sum, sumsq;
    for (long t = 0; t < cfg.trials; ++t) {
        Rng ch_rng(cfg.seed, static_cast<std::uint64_t>(t), 0);
        TrialChannels ch = draw_trial_channels(cfg, ch_rng);
        ChannelRealization h_alloc(ch.alloc_mag);
        PowerAllocation alloc = allocate(cfg, moms, h_alloc);
        std::vector<double> b = alloc.b_original_order(h_alloc);

        double mse = sigma2 * alloc.a * alloc.a;
        for (int k = 0; k < cfg.K; ++k) {
            double g = alloc.a * b[static_cast<size_t>(k)] * ch.applied[static_cast<size_t>(k)];
            mse += g * g * moms.eps_hat - 2.0 * g * moms.eps_check + 1.0;
        }
        sum.add(mse);
        sumsq.add(mse * mse);
    }
    return finish(sum, sumsq, cfg.trials);
}

std::pair<MseEstimate, MseEstimate> equivalence_check(const ScenarioConfig& cfg,
                                                      const WaveformSpec& spec) {
    if (cfg.trials < 10000)
        throw std::invalid_argument("equivalence_check needs >= 10^4 trials");
    ScenarioConfig per_device = cfg;
    per_device.error_mode = ErrorMode::PerDevice;
    ScenarioConfig receiver = cfg;
    receiver.error_mode = ErrorMode::ReceiverEquivalent;
    std::uint64_t s = cfg.seed;
    receiver.seed = splitmix64(s);
    return {simulate_mse(per_device, spec), simulate_mse(receiver, spec)};
}

std::vector<SweepRow> sweep(const ScenarioConfig& cfg_template, SweepAxis axis,
                            const std::vector<double>& values,
                            const std::vector<WaveformSpec>& specs) {
    if (values.empty()) throw std::invalid_argument("sweep needs at least one axis value");
    if (specs.empty()) throw std::invalid_argument("sweep needs at least one waveform");
    std::vector<SweepRow> rows;
    for (size_t vi = 0; vi < values.size(); ++vi) {
        for (size_t wi = 0; wi < specs.size(); ++wi) {
            ScenarioConfig cfg = cfg_template;
            WaveformSpec spec = specs[wi];
            double v = values[vi];
            switch (axis) {
                case SweepAxis::K:
                    cfg.K = static_cast<int>(std::lround(v));
                    break;
                case SweepAxis::SnrDb:
                    cfg.snr_db = v;
                    break;
                case SweepAxis::SigmaEps:
                    cfg.sigma_eps = v;
                    break;
                case SweepAxis::Alpha:
                    if (spec.kind == WaveformKind::FittedCosine) {
                        if (!WaveformSpec::has_fitted_preset(v)) continue;
                        spec = WaveformSpec::fitted_preset(v);
                    } else if (spec.kind == WaveformKind::Sampled) {
                        throw std::invalid_argument("alpha sweep needs parametric waveforms");
                    } else {
                        spec.alpha = v;
                    }
                    break;
            }
            std::uint64_t s = cfg_template.seed ^ (0x9E3779B97F4A7C15ULL * (vi + 1));
            s ^= 0xC2B2AE3D27D4EB4FULL * (wi + 1);
            cfg.seed = splitmix64(s);
            MseEstimate est = simulate_mse(cfg, spec);
            rows.push_back({values[vi], spec.name(), est.mean, est.std_err, est.trials});
        }
    }
    return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "axis,waveform,mse,stderr,trials\n";
    char line[160];
    for (const auto& r : rows) {
        std::snprintf(line, sizeof line, "%.12g,%s,%.12g,%.12g,%ld\n", r.axis_value,
                      r.waveform.c_str(), r.mse, r.std_err, r.trials);
        out << line;
    }
}

const char* to_string(DataDist d) {
    switch (d) {
        case DataDist::UniformSqrt3: return "uniform_sqrt3";
        case DataDist::GaussianUnit: return "gaussian_unit";
        case DataDist::LaplaceUnit: return "laplace_unit";
    }
    return "?";
}

const char* to_string(CsiMode c) {
    return c == CsiMode::Perfect ? "perfect" : "noisy";
}

const char* to_string(ErrorMode e) {
    return e == ErrorMode::PerDevice ? "per_device" : "receiver_equivalent";
}

}  // namespace ota
