#include "ota/designer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "ota/allocation.hpp"
#include "ota/dft.hpp"
#include "ota/rng.hpp"

namespace ota {

namespace {

int support_half(int n_samples, int mu) { return (n_samples - 1) / (2 * (mu + 1)); }

// Per-sample loss pieces operating on one pulse vector z (length N_s).
struct SampleLossContext {
    const DesignConfig* cfg;
    const std::vector<double>* pmf;
    int n_total = 0;       // N_s + zero padding
    int mask_start = 0;    // first penalized bin (one side)
    double e_target = 0.0;
};

struct SampleLoss {
    double l_mse = 0.0, l_f = 0.0, l_e = 0.0, l_s = 0.0;
};

// Computes the four loss components for one sample and, if dz is non-null,
// accumulates the weighted gradient d(total)/dz into it.
SampleLoss sample_loss(const Eigen::VectorXd& z, const TrainSample& s,
                       const SampleLossContext& ctx, Eigen::VectorXd* dz) {
    const DesignConfig& cfg = *ctx.cfg;
    const int ns = cfg.n_samples();
    const int center = (ns - 1) / 2;
    const int spp = cfg.samples_per_symbol;
    const int qmax = cfg.mu / 2;
    const int m_half = support_half(ns, cfg.mu);
    SampleLoss out;

    // Aggregate per-offset data-weighted gains S_q = sum_k x_{k,q} b_k h_k.
    const int K = cfg.K;
    const double a = s.u(0);
    std::vector<double> S(static_cast<size_t>(2 * qmax + 1), 0.0);
    for (int q = -qmax; q <= qmax; ++q) {
        double acc = 0.0;
        for (int k = 0; k < K; ++k)
            acc += s.x(k, q + qmax) * s.u(1 + k) * s.u(1 + K + k);
        S[static_cast<size_t>(q + qmax)] = acc;
    }

    // Expected squared error over the timing-offset PMF.
    for (int m = -m_half; m <= m_half; ++m) {
        double y = s.noise;
        for (int q = -qmax; q <= qmax; ++q) {
            int idx = center + m + q * spp;
            double zv = (idx >= 0 && idx < ns) ? z(idx) : 0.0;
            y += S[static_cast<size_t>(q + qmax)] * zv;
        }
        y *= a;
        double diff = y - s.r;
        double f = (*ctx.pmf)[static_cast<size_t>(m + m_half)];
        out.l_mse += f * diff * diff;
        if (dz) {
            double w = 2.0 * f * diff * a;
            for (int q = -qmax; q <= qmax; ++q) {
                int idx = center + m + q * spp;
                if (idx >= 0 && idx < ns)
                    (*dz)(idx) += w * S[static_cast<size_t>(q + qmax)];
            }
        }
    }

    // Spectral penalties on the zero-padded transform.
    std::vector<double> padded(static_cast<size_t>(ctx.n_total), 0.0);
    for (int i = 0; i < ns; ++i) padded[static_cast<size_t>(i)] = z(i);
    auto spec = real_dft(padded);
    const size_t half = spec.size();
    const bool even = (ctx.n_total % 2 == 0);
    const double n_inv = 1.0 / static_cast<double>(ctx.n_total);

    double e_dnn = 0.0;
    for (size_t n = 0; n < half; ++n) {
        double mult = (n == 0 || (even && n + 1 == half)) ? 1.0 : 2.0;
        e_dnn += mult * std::abs(spec[n]);
    }
    e_dnn *= n_inv;
    double e_diff = e_dnn - ctx.e_target;
    out.l_e = e_diff * e_diff;

    for (size_t n = static_cast<size_t>(ctx.mask_start); n < half; ++n) {
        double d = std::abs(spec[n]) - cfg.gamma_thr;
        out.l_f += d * d;
    }

    if (dz) {
        std::vector<std::complex<double>> c(half, {0.0, 0.0});
        for (size_t n = 0; n < half; ++n) {
            double mag = std::abs(spec[n]);
            if (mag < 1e-300) continue;
            double mult = (n == 0 || (even && n + 1 == half)) ? 1.0 : 2.0;
            double w = cfg.penalty_e * 2.0 * e_diff * n_inv * mult;
            if (n >= static_cast<size_t>(ctx.mask_start))
                w += cfg.penalty_f * 2.0 * (mag - cfg.gamma_thr);
            c[n] = (w / mag) * spec[n];
        }
        auto adj = real_dft_adjoint(c, ctx.n_total);
        for (int i = 0; i < ns; ++i) (*dz)(i) += adj[static_cast<size_t>(i)];
    }

    // Time symmetry about the center sample.
    for (int m = 1; m <= center; ++m) {
        double d = z(center + m) - z(center - m);
        out.l_s += d * d;
        if (dz) {
            (*dz)(center + m) += cfg.penalty_s * 2.0 * d;
            (*dz)(center - m) -= cfg.penalty_s * 2.0 * d;
        }
    }
    return out;
}

struct ForwardCache {
    std::vector<Eigen::MatrixXd> acts;  // acts[0] = input batch, rows = samples
};

Eigen::MatrixXd forward_batch(const MLPParams& p, const Eigen::MatrixXd& input,
                              ForwardCache* cache) {
    Eigen::MatrixXd h = input;
    if (cache) cache->acts.push_back(h);
    const size_t layers = p.weights.size();
    for (size_t l = 0; l < layers; ++l) {
        Eigen::MatrixXd next = (h * p.weights[l].transpose()).rowwise() + p.biases[l].transpose();
        if (l + 1 < layers) next = next.cwiseMax(0.0);  // ReLU on hidden layers
        h = std::move(next);
        if (cache) cache->acts.push_back(h);
    }
    return h;
}

void check_arch(const MLPParams& p, int in_dim, int out_dim) {
    if (p.weights.empty() || p.weights.size() != p.biases.size())
        throw std::invalid_argument("malformed MLP parameters");
    int cur = in_dim;
    for (size_t l = 0; l < p.weights.size(); ++l) {
        if (p.weights[l].cols() != cur || p.weights[l].rows() != p.biases[l].size())
            throw std::invalid_argument("MLP layer shape mismatch");
        cur = static_cast<int>(p.weights[l].rows());
    }
    if (cur != out_dim) throw std::invalid_argument("MLP output width mismatch");
}

double btrc_spectral_mean(const DesignConfig& cfg) {
    WaveformSpec ref = discretize(WaveformSpec::btrc(cfg.alpha), cfg.samples_per_symbol, cfg.mu);
    int pad = zero_pad_count(cfg.delta_alpha, cfg.mu, cfg.samples_per_symbol);
    std::vector<double> padded = ref.samples;
    padded.resize(padded.size() + static_cast<size_t>(pad), 0.0);
    auto mags = real_dft_magnitude(padded);
    int n_total = static_cast<int>(padded.size());
    bool even = (n_total % 2 == 0);
    double acc = 0.0;
    for (size_t n = 0; n < mags.size(); ++n) {
        double mult = (n == 0 || (even && n + 1 == mags.size())) ? 1.0 : 2.0;
        acc += mult * mags[n];
    }
    return acc / static_cast<double>(n_total);
}

struct Adam {
    std::vector<Eigen::MatrixXd> mw, vw;
    std::vector<Eigen::VectorXd> mb, vb;
    long step = 0;

    explicit Adam(const MLPParams& p) {
        for (const auto& w : p.weights) {
            mw.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
            vw.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
        }
        for (const auto& b : p.biases) {
            mb.emplace_back(Eigen::VectorXd::Zero(b.size()));
            vb.emplace_back(Eigen::VectorXd::Zero(b.size()));
        }
    }

    void update(MLPParams& p, const MLPParams& g, const DesignConfig& cfg) {
        ++step;
        double c1 = 1.0 - std::pow(cfg.adam_beta1, static_cast<double>(step));
        double c2 = 1.0 - std::pow(cfg.adam_beta2, static_cast<double>(step));
        double lr = cfg.adam_lr * std::sqrt(c2) / c1;
        for (size_t l = 0; l < p.weights.size(); ++l) {
            mw[l] = cfg.adam_beta1 * mw[l] + (1.0 - cfg.adam_beta1) * g.weights[l];
            vw[l] = cfg.adam_beta2 * vw[l].array().matrix() +
                    (1.0 - cfg.adam_beta2) * g.weights[l].cwiseProduct(g.weights[l]);
            p.weights[l].array() -=
                lr * mw[l].array() / (vw[l].array().sqrt() + cfg.adam_eps * std::sqrt(c2));
            mb[l] = cfg.adam_beta1 * mb[l] + (1.0 - cfg.adam_beta1) * g.biases[l];
            vb[l] = cfg.adam_beta2 * vb[l].array().matrix() +
                    (1.0 - cfg.adam_beta2) * g.biases[l].cwiseProduct(g.biases[l]);
            p.biases[l].array() -=
                lr * mb[l].array() / (vb[l].array().sqrt() + cfg.adam_eps * std::sqrt(c2));
        }
    }
};

}  // namespace

double DesignConfig::sigma2() const { return P / std::pow(10.0, snr_db / 10.0); }

void DesignConfig::set_desk_scale() {
    samples_per_symbol = 50;
    n_train = 5000;
    n_val = 500;
    n_test = 5000;
}

void DesignConfig::validate() const {
    if (K < 1) throw std::invalid_argument("K must be >= 1");
    if (samples_per_symbol < 2) throw std::invalid_argument("samples_per_symbol must be >= 2");
    if (mu < 0 || mu % 2 != 0) throw std::invalid_argument("mu must be even");
    if (!(delta_alpha > 0.0 && delta_alpha <= 1.0))
        throw std::invalid_argument("delta_alpha must be in (0, 1]");
    if (!(gamma_thr > 0.0)) throw std::invalid_argument("gamma_thr must be > 0");
    if (!(penalty_f > 0.0 && penalty_e > 0.0 && penalty_s > 0.0))
        throw std::invalid_argument("penalty weights must be > 0");
    if (hidden.empty()) throw std::invalid_argument("need at least one hidden layer");
    if (batch < 1 || epochs < 1 || n_train < 1 || n_test < 1)
        throw std::invalid_argument("batch, epochs and dataset sizes must be >= 1");
    if (!(sigma_eps > 0.0)) throw std::invalid_argument("sigma_eps must be > 0");
    if (n_samples() % 2 == 0) throw std::invalid_argument("sample grid must be odd");
}

long MLPParams::parameter_count() const {
    long n = 0;
    for (const auto& w : weights) n += static_cast<long>(w.size());
    for (const auto& b : biases) n += static_cast<long>(b.size());
    return n;
}

std::vector<double> sync_error_pmf(double sigma_eps, int n_samples, int mu) {
    if (!(sigma_eps > 0.0)) throw std::invalid_argument("sigma_eps must be > 0");
    if (n_samples < 3 || n_samples % 2 == 0)
        throw std::invalid_argument("n_samples must be odd and >= 3");
    int m_half = support_half(n_samples, mu);
    double dt = static_cast<double>(mu + 1) / static_cast<double>(n_samples - 1);
    std::vector<double> f(static_cast<size_t>(2 * m_half + 1));
    double sum = 0.0;
    for (int m = -m_half; m <= m_half; ++m) {
        double t = m * dt;
        double v = std::exp(-0.5 * t * t / (sigma_eps * sigma_eps));
        f[static_cast<size_t>(m + m_half)] = v;
        sum += v;
    }
    for (double& v : f) v /= sum;
    return f;
}

int zero_pad_count(double delta_alpha, int mu, int samples_per_symbol) {
    if (!(delta_alpha > 0.0 && delta_alpha <= 1.0))
        throw std::invalid_argument("delta_alpha must be in (0, 1]");
    double periods = 2.0 / delta_alpha - (mu + 1);
    if (periods <= 0.0) return 0;
    return static_cast<int>(std::lround(periods * samples_per_symbol));
}

int mask_start_bin(double alpha, double delta_alpha) {
    double ratio = alpha / delta_alpha;
    if (std::fabs(ratio - std::lround(ratio)) > 1e-9)
        throw std::invalid_argument("alpha must be a multiple of delta_alpha");
    return static_cast<int>(std::lround(1.0 / delta_alpha)) +
           static_cast<int>(std::lround(ratio)) + 1;
}

MLPParams init_params(const DesignConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    MLPParams p;
    std::vector<int> widths;
    widths.push_back(3 * cfg.K + 1);
    for (int hwidth : cfg.hidden) widths.push_back(hwidth);
    widths.push_back(cfg.n_samples());
    Rng rng(seed, 0xA11C);
    for (size_t l = 0; l + 1 < widths.size(); ++l) {
        int in = widths[l], out = widths[l + 1];
        double bound = 1.0 / std::sqrt(static_cast<double>(in));
        Eigen::MatrixXd w(out, in);
        for (int i = 0; i < out; ++i)
            for (int j = 0; j < in; ++j) w(i, j) = rng.uniform(-bound, bound);
        Eigen::VectorXd b(out);
        for (int i = 0; i < out; ++i) b(i) = rng.uniform(-bound, bound);
        p.weights.push_back(std::move(w));
        p.biases.push_back(std::move(b));
    }
    return p;
}

Eigen::VectorXd forward(const MLPParams& params, const Eigen::VectorXd& u) {
    check_arch(params, static_cast<int>(u.size()),
               static_cast<int>(params.weights.back().rows()));
    Eigen::MatrixXd input = u.transpose();
    return forward_batch(params, input, nullptr).row(0).transpose();
}

LossBreakdown loss_total(const MLPParams& params, const std::vector<TrainSample>& batch,
                         const std::vector<double>& pmf, const DesignConfig& cfg,
                         MLPParams* grad) {
    if (batch.empty()) throw std::invalid_argument("loss_total needs a non-empty batch");
    const int ns = cfg.n_samples();
    const int in_dim = 3 * cfg.K + 1;
    check_arch(params, in_dim, ns);
    if (static_cast<int>(pmf.size()) != 2 * support_half(ns, cfg.mu) + 1)
        throw std::invalid_argument("pmf length does not match the sample grid");

    SampleLossContext ctx;
    ctx.cfg = &cfg;
    ctx.pmf = &pmf;
    ctx.n_total = ns + zero_pad_count(cfg.delta_alpha, cfg.mu, cfg.samples_per_symbol);
    ctx.mask_start = mask_start_bin(cfg.alpha, cfg.delta_alpha) + 1;
    ctx.e_target = cfg.energy_target > 0.0 ? cfg.energy_target : btrc_spectral_mean(cfg);

    const int B = static_cast<int>(batch.size());
    Eigen::MatrixXd input(B, in_dim);
    for (int d = 0; d < B; ++d) input.row(d) = batch[static_cast<size_t>(d)].u.transpose();

    ForwardCache cache;
    Eigen::MatrixXd z = forward_batch(params, input, grad ? &cache : nullptr);

    LossBreakdown total;
    Eigen::MatrixXd dz_batch;
    if (grad) dz_batch = Eigen::MatrixXd::Zero(B, ns);
    Eigen::VectorXd dz(ns);
    for (int d = 0; d < B; ++d) {
        Eigen::VectorXd zd = z.row(d).transpose();
        dz.setZero();
        SampleLoss sl = sample_loss(zd, batch[static_cast<size_t>(d)], ctx, grad ? &dz : nullptr);
        total.l_mse += sl.l_mse;
        total.l_f += sl.l_f;
        total.l_e += sl.l_e;
        total.l_s += sl.l_s;
        if (grad) dz_batch.row(d) = dz.transpose() / static_cast<double>(B);
    }
    double inv_b = 1.0 / static_cast<double>(B);
    total.l_mse *= inv_b;
    total.l_f *= inv_b;
    total.l_e *= inv_b;
    total.l_s *= inv_b;
    total.total = total.l_mse + cfg.penalty_f * total.l_f + cfg.penalty_e * total.l_e +
                  cfg.penalty_s * total.l_s;

    if (grad) {
        // Backprop dz through the linear output layer and the ReLU stack.
        const size_t layers = params.weights.size();
        Eigen::MatrixXd delta = dz_batch;
        for (size_t l = layers; l-- > 0;) {
            const Eigen::MatrixXd& act_in = cache.acts[l];
            grad->weights[l] += delta.transpose() * act_in;
            grad->biases[l] += delta.colwise().sum().transpose();
            if (l > 0) {
                delta = delta * params.weights[l];
                delta = delta.cwiseProduct(
                    (cache.acts[l].array() > 0.0).cast<double>().matrix());
            }
        }
    }
    return total;
}

std::vector<TrainSample> make_dataset(const DesignConfig& cfg, long count, std::uint64_t tag) {
    cfg.validate();
    std::vector<TrainSample> out(static_cast<size_t>(count));
    const int K = cfg.K;
    const int qmax = cfg.mu / 2;
    const double noise_std = std::sqrt(cfg.sigma2());
    for (long d = 0; d < count; ++d) {
        Rng rng(cfg.seed, tag, static_cast<std::uint64_t>(d));
        TrainSample& s = out[static_cast<size_t>(d)];
        std::vector<double> mags(static_cast<size_t>(K));
        for (int k = 0; k < K; ++k) mags[static_cast<size_t>(k)] = rng.rayleigh_unit();
        ChannelRealization h(mags);
        // Baseline gains: the policy for a synchronization-free,
        // interference-free link (unit amplitude moments).
        PowerAllocation alloc = solve_no_isi(1.0, 1.0, h, cfg.P, cfg.sigma2());

        s.x.resize(K, cfg.mu + 1);
        for (int k = 0; k < K; ++k)
            for (int qi = 0; qi <= 2 * qmax; ++qi)
                s.x(k, qi) = (2.0 * rng.uniform01() - 1.0) * 1.7320508075688772935;

        s.u.resize(3 * K + 1);
        s.u(0) = alloc.a;
        s.r = 0.0;
        for (int k = 0; k < K; ++k) {
            s.u(1 + k) = alloc.b[static_cast<size_t>(k)];
            s.u(1 + K + k) = h.sorted()[static_cast<size_t>(k)];
            s.u(1 + 2 * K + k) = s.x(k, qmax);
            s.r += s.x(k, qmax);
        }
        s.noise = rng.gaussian(0.0, noise_std);
    }
    return out;
}

TrainResult train(const DesignConfig& cfg) {
    cfg.validate();
    TrainResult res;
    res.params = init_params(cfg, cfg.seed);
    auto pmf = sync_error_pmf(cfg.sigma_eps, cfg.n_samples(), cfg.mu);

    auto train_set = make_dataset(cfg, cfg.n_train, 1);
    auto val_set = make_dataset(cfg, cfg.n_val, 2);
    res.test_set = make_dataset(cfg, cfg.n_test, 3);

    DesignConfig fixed = cfg;
    fixed.energy_target = cfg.energy_target > 0.0 ? cfg.energy_target : btrc_spectral_mean(cfg);

    Adam adam(res.params);
    std::vector<long> order(static_cast<size_t>(cfg.n_train));
    std::iota(order.begin(), order.end(), 0L);

    MLPParams grad;
    for (const auto& w : res.params.weights)
        grad.weights.emplace_back(Eigen::MatrixXd::Zero(w.rows(), w.cols()));
    for (const auto& b : res.params.biases)
        grad.biases.emplace_back(Eigen::VectorXd::Zero(b.size()));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        Rng shuffle_rng(cfg.seed, 4, static_cast<std::uint64_t>(epoch));
        for (size_t i = order.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(shuffle_rng.raw() % i);
            std::swap(order[i - 1], order[j]);
        }

        EpochStats stats;
        long n_batches = 0;
        for (long start = 0; start + cfg.batch <= cfg.n_train; start += cfg.batch) {
            std::vector<TrainSample> batch(
                static_cast<size_t>(cfg.batch));
            for (int i = 0; i < cfg.batch; ++i)
                batch[static_cast<size_t>(i)] =
                    train_set[static_cast<size_t>(order[static_cast<size_t>(start + i)])];
            for (auto& w : grad.weights) w.setZero();
            for (auto& b : grad.biases) b.setZero();
            LossBreakdown lb = loss_total(res.params, batch, pmf, fixed, &grad);
            if (!std::isfinite(lb.total))
                throw std::runtime_error("training diverged: non-finite loss at epoch " +
                                         std::to_string(epoch));
            adam.update(res.params, grad, fixed);
            stats.train_mean.l_mse += lb.l_mse;
            stats.train_mean.l_f += lb.l_f;
            stats.train_mean.l_e += lb.l_e;
            stats.train_mean.l_s += lb.l_s;
            stats.train_mean.total += lb.total;
            ++n_batches;
        }
        double inv = 1.0 / static_cast<double>(n_batches);
        stats.train_mean.l_mse *= inv;
        stats.train_mean.l_f *= inv;
        stats.train_mean.l_e *= inv;
        stats.train_mean.l_s *= inv;
        stats.train_mean.total *= inv;
        stats.val_total = loss_total(res.params, val_set, pmf, fixed).total;
        res.history.push_back(stats);
    }
    return res;
}

WaveformSpec extract_waveform(const MLPParams& params, const std::vector<TrainSample>& inputs,
                              const DesignConfig& cfg) {
    if (inputs.empty()) throw std::invalid_argument("extract_waveform needs inputs");
    const int ns = cfg.n_samples();
    Eigen::VectorXd mean = Eigen::VectorXd::Zero(ns);
    const int chunk = 256;
    for (size_t start = 0; start < inputs.size(); start += chunk) {
        size_t n = std::min(static_cast<size_t>(chunk), inputs.size() - start);
        Eigen::MatrixXd input(static_cast<int>(n), 3 * cfg.K + 1);
        for (size_t i = 0; i < n; ++i) input.row(static_cast<int>(i)) = inputs[start + i].u;
        Eigen::MatrixXd z = forward_batch(params, input, nullptr);
        mean += z.colwise().sum().transpose();
    }
    mean /= static_cast<double>(inputs.size());
    std::vector<double> samples(mean.data(), mean.data() + mean.size());
    return WaveformSpec::sampled(std::move(samples),
                                 1.0 / static_cast<double>(cfg.samples_per_symbol));
}

namespace {

// RMSE of the best 7-coefficient fit at a fixed rate p; fills coeffs.
double fit_at_rate(const std::vector<double>& t, const Eigen::VectorXd& y, double p,
                   std::array<double, 7>* coeffs) {
    const int n = static_cast<int>(t.size());
    Eigen::MatrixXd design(n, 7);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < 7; ++j) design(i, j) = std::cos(j * p * t[static_cast<size_t>(i)]);
    Eigen::VectorXd sol = design.colPivHouseholderQr().solve(y);
    if (coeffs)
        for (int j = 0; j < 7; ++j) (*coeffs)[static_cast<size_t>(j)] = sol(j);
    return std::sqrt((design * sol - y).squaredNorm() / static_cast<double>(n));
}

}  // namespace

CosineFit fit_cosine(const WaveformSpec& sampled) {
    if (sampled.kind != WaveformKind::Sampled)
        throw std::invalid_argument("fit_cosine needs a Sampled waveform");
    validate(sampled);
    const int n = static_cast<int>(sampled.samples.size());
    const int halfcount = (n - 1) / 2;
    std::vector<double> t(static_cast<size_t>(n));
    Eigen::VectorXd y(n);
    bool all_zero = true;
    for (int i = 0; i < n; ++i) {
        t[static_cast<size_t>(i)] = (i - halfcount) * sampled.dt;
        y(i) = sampled.samples[static_cast<size_t>(i)];
        if (y(i) != 0.0) all_zero = false;
    }
    CosineFit fit;
    if (all_zero) return fit;

    double best_p = 0.0, best_rmse = std::numeric_limits<double>::infinity();
    const double p_lo = 0.05, p_hi = 3.0, p_step = 0.005;
    for (double p = p_lo; p <= p_hi + 1e-12; p += p_step) {
        double rmse = fit_at_rate(t, y, p, nullptr);
        if (rmse < best_rmse) {
            best_rmse = rmse;
            best_p = p;
        }
    }

    // Golden-section refinement around the best grid point.
    const double gr = 0.6180339887498949;
    double a = std::max(p_lo, best_p - p_step), b = std::min(p_hi, best_p + p_step);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = fit_at_rate(t, y, x1, nullptr), f2 = fit_at_rate(t, y, x2, nullptr);
    for (int it = 0; it < 80 && (b - a) > 1e-12; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = fit_at_rate(t, y, x1, nullptr);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = fit_at_rate(t, y, x2, nullptr);
        }
    }
    fit.p = 0.5 * (a + b);
    fit.rmse = fit_at_rate(t, y, fit.p, &fit.coeffs);
    return fit;
}

void write_training_curve_csv(const std::vector<EpochStats>& history, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "epoch,l_mse,l_f,l_e,l_s,total\n";
    char line[160];
    for (size_t e = 0; e < history.size(); ++e) {
        const LossBreakdown& lb = history[e].train_mean;
        std::snprintf(line, sizeof line, "%zu,%.12g,%.12g,%.12g,%.12g,%.12g\n", e, lb.l_mse,
                      lb.l_f, lb.l_e, lb.l_s, lb.total);
        out << line;
    }
}

void write_fit_keyvalues(const CosineFit& fit, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    char buf[64];
    for (int j = 0; j < 7; ++j) {
        std::snprintf(buf, sizeof buf, "a%d=%.12g\n", j, fit.coeffs[static_cast<size_t>(j)]);
        out << buf;
    }
    std::snprintf(buf, sizeof buf, "p=%.12g\n", fit.p);
    out << buf;
    std::snprintf(buf, sizeof buf, "rmse=%.12g\n", fit.rmse);
    out << buf;
}

}  // namespace ota
