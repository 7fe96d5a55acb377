#include "ota/waveforms.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ota/dft.hpp"

namespace ota {

namespace {

constexpr double kPi = 3.141592653589793238462643;

double sinc(double x) {
    if (std::fabs(x) < 1e-12) return 1.0;
    double px = kPi * x;
    return std::sin(px) / px;
}

double eval_rc(double alpha, double t) {
    double den = 1.0 - (2.0 * alpha * t) * (2.0 * alpha * t);
    if (std::fabs(den) < 1e-8) {
        // Removable singularity at t = +-1/(2 alpha): the cosine zero cancels
        // the denominator zero, limit (pi/4) * sinc(t).
        return 0.25 * kPi * sinc(t);
    }
    return sinc(t) * std::cos(kPi * alpha * t) / den;
}

double eval_btrc(double alpha, double t) {
    if (alpha < 1e-12) return sinc(t);  // beta -> infinity limit
    double beta = 2.0 * std::log(2.0) / alpha;
    double pat = kPi * alpha * t;
    double num = 4.0 * beta * kPi * t * std::sin(pat) + 2.0 * beta * beta * std::cos(pat) -
                 beta * beta;
    double den = (2.0 * kPi * t) * (2.0 * kPi * t) + beta * beta;
    return sinc(t) * num / den;
}

double eval_fitted(const WaveformSpec& spec, double t) {
    if (std::fabs(t) > spec.window_half) return 0.0;
    double v = 0.0;
    for (int j = 0; j < 7; ++j) v += spec.coeffs[j] * std::cos(j * spec.p * t);
    return v;
}

double eval_sampled(const WaveformSpec& spec, double t) {
    const auto& s = spec.samples;
    int n = static_cast<int>(s.size());
    double half = 0.5 * (n - 1) * spec.dt;
    if (t < -half || t > half) return 0.0;
    double x = (t + half) / spec.dt;
    int i = static_cast<int>(std::floor(x));
    if (i >= n - 1) return s.back();
    double frac = x - i;
    return s[i] + frac * (s[i + 1] - s[i]);
}

}  // namespace

WaveformSpec WaveformSpec::rc(double alpha) {
    WaveformSpec s;
    s.kind = WaveformKind::RC;
    s.alpha = alpha;
    validate(s);
    return s;
}

WaveformSpec WaveformSpec::btrc(double alpha) {
    WaveformSpec s;
    s.kind = WaveformKind::BTRC;
    s.alpha = alpha;
    validate(s);
    return s;
}

WaveformSpec WaveformSpec::fitted_cosine(const std::array<double, 7>& coeffs, double p,
                                         double window_half) {
    WaveformSpec s;
    s.kind = WaveformKind::FittedCosine;
    s.coeffs = coeffs;
    s.p = p;
    s.window_half = window_half;
    validate(s);
    return s;
}

WaveformSpec WaveformSpec::sampled(std::vector<double> samples, double dt) {
    WaveformSpec s;
    s.kind = WaveformKind::Sampled;
    s.samples = std::move(samples);
    s.dt = dt;
    validate(s);
    return s;
}

bool WaveformSpec::has_fitted_preset(double alpha) {
    return std::fabs(alpha - 0.2) < 1e-9 || std::fabs(alpha - 0.5) < 1e-9 ||
           std::fabs(alpha - 0.8) < 1e-9;
}

WaveformSpec WaveformSpec::fitted_preset(double alpha) {
    WaveformSpec s;
    if (std::fabs(alpha - 0.2) < 1e-9) {
        s = fitted_cosine({0.0939, 0.2168, 0.1841, 0.2092, 0.1647, 0.0950, 0.0121}, 0.6481);
    } else if (std::fabs(alpha - 0.5) < 1e-9) {
        s = fitted_cosine({0.1313, 0.2638, 0.2371, 0.1676, 0.1406, 0.0764, 0.0053}, 0.8378);
    } else if (std::fabs(alpha - 0.8) < 1e-9) {
        s = fitted_cosine({0.1360, 0.2507, 0.2046, 0.1712, 0.1315, 0.0994, 0.0405}, 0.8739);
    } else {
        throw std::invalid_argument("no fitted-cosine preset for alpha=" + std::to_string(alpha));
    }
    s.alpha = alpha;
    return s;
}

std::string WaveformSpec::name() const {
    char buf[64];
    switch (kind) {
        case WaveformKind::RC:
            std::snprintf(buf, sizeof buf, "rc_a%.6g", alpha);
            return buf;
        case WaveformKind::BTRC:
            std::snprintf(buf, sizeof buf, "btrc_a%.6g", alpha);
            return buf;
        case WaveformKind::FittedCosine:
            if (alpha > 0.0) {
                std::snprintf(buf, sizeof buf, "fitted_a%.6g", alpha);
                return buf;
            }
            return "fitted";
        case WaveformKind::Sampled:
            return "sampled";
    }
    return "unknown";
}

void validate(const WaveformSpec& spec) {
    switch (spec.kind) {
        case WaveformKind::RC:
        case WaveformKind::BTRC:
            if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0))
                throw std::invalid_argument("roll-off alpha must be in [0, 1]");
            break;
        case WaveformKind::FittedCosine:
            if (!(spec.p > 0.0)) throw std::invalid_argument("fitted-cosine rate p must be > 0");
            if (!(spec.window_half > 0.0))
                throw std::invalid_argument("fitted-cosine window must be > 0");
            break;
        case WaveformKind::Sampled:
            if (spec.samples.empty() || spec.samples.size() % 2 == 0)
                throw std::invalid_argument("sampled waveform needs an odd sample count");
            if (!(spec.dt > 0.0)) throw std::invalid_argument("sampled waveform needs dt > 0");
            break;
    }
}

double sample(const WaveformSpec& spec, double t) {
    if (!std::isfinite(t)) throw std::invalid_argument("sample time must be finite");
    switch (spec.kind) {
        case WaveformKind::RC:
            return eval_rc(spec.alpha, t);
        case WaveformKind::BTRC:
            return eval_btrc(spec.alpha, t);
        case WaveformKind::FittedCosine:
            return eval_fitted(spec, t);
        case WaveformKind::Sampled:
            return eval_sampled(spec, t);
    }
    throw std::logic_error("unreachable");
}

double energy(const WaveformSpec& spec, double window) {
    if (!(window > 0.0)) throw std::invalid_argument("energy window must be > 0");
    validate(spec);
    long n = std::lround(std::ceil(2.0 * window * 1000.0));
    if (n % 2 != 0) ++n;  // Simpson needs an even interval count
    double h = 2.0 * window / static_cast<double>(n);
    auto f = [&](long i) {
        double z = sample(spec, -window + h * static_cast<double>(i));
        return z * z;
    };
    double acc = f(0) + f(n);
    for (long i = 1; i < n; i += 2) acc += 4.0 * f(i);
    for (long i = 2; i < n; i += 2) acc += 2.0 * f(i);
    return acc * h / 3.0;
}

WaveformSpec discretize(const WaveformSpec& spec, int samples_per_symbol, int mu) {
    if (samples_per_symbol < 2)
        throw std::invalid_argument("samples_per_symbol must be >= 2");
    if (mu < 0 || mu % 2 != 0) throw std::invalid_argument("mu must be even");
    validate(spec);
    int ns = samples_per_symbol * (mu + 1) + 1;
    double dt = 1.0 / static_cast<double>(samples_per_symbol);
    std::vector<double> out(static_cast<size_t>(ns));
    int half = (ns - 1) / 2;
    for (int i = 0; i < ns; ++i) out[static_cast<size_t>(i)] = sample(spec, (i - half) * dt);
    return WaveformSpec::sampled(std::move(out), dt);
}

SpectrumReport spectrum(const WaveformSpec& sampled, int zero_pad_count, double threshold,
                        int mask_start) {
    if (sampled.kind != WaveformKind::Sampled)
        throw std::invalid_argument("spectrum needs a Sampled waveform");
    if (zero_pad_count < 0) throw std::invalid_argument("zero_pad_count must be >= 0");
    validate(sampled);

    std::vector<double> padded = sampled.samples;
    padded.resize(padded.size() + static_cast<size_t>(zero_pad_count), 0.0);
    SpectrumReport rep;
    rep.magnitudes = real_dft_magnitude(padded);
    rep.df = 1.0 / (static_cast<double>(padded.size()) * sampled.dt);
    for (size_t n = 0; n < rep.magnitudes.size(); ++n) {
        if (rep.magnitudes[n] > threshold) ++rep.occupied_bins;
        if (mask_start >= 0 && n >= static_cast<size_t>(mask_start))
            rep.out_of_band_max = std::max(rep.out_of_band_max, rep.magnitudes[n]);
    }
    return rep;
}

void write_waveform_csv(const WaveformSpec& sampled, const std::string& path) {
    if (sampled.kind != WaveformKind::Sampled)
        throw std::invalid_argument("waveform csv needs a Sampled waveform");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "t,z\n";
    int n = static_cast<int>(sampled.samples.size());
    int half = (n - 1) / 2;
    char line[80];
    for (int i = 0; i < n; ++i) {
        std::snprintf(line, sizeof line, "%.12g,%.12g\n", (i - half) * sampled.dt,
                      sampled.samples[static_cast<size_t>(i)]);
        out << line;
    }
}

WaveformSpec read_waveform_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::string header;
    std::getline(in, header);
    if (header != "t,z") throw std::runtime_error(path + ": expected header 't,z'");
    std::vector<double> t, z;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        size_t comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error(path + ": malformed row");
        t.push_back(std::stod(line.substr(0, comma)));
        z.push_back(std::stod(line.substr(comma + 1)));
    }
    if (t.size() < 3) throw std::runtime_error(path + ": too few samples");
    double dt = t[1] - t[0];
    for (size_t i = 1; i < t.size(); ++i)
        if (std::fabs(t[i] - t[i - 1] - dt) > 1e-9 * std::max(1.0, std::fabs(dt)))
            throw std::runtime_error(path + ": non-uniform time grid");
    return WaveformSpec::sampled(std::move(z), dt);
}

void write_spectrum_csv(const SpectrumReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "bin,frequency,magnitude\n";
    char line[96];
    for (size_t n = 0; n < report.magnitudes.size(); ++n) {
        std::snprintf(line, sizeof line, "%zu,%.12g,%.12g\n", n, report.df * static_cast<double>(n),
                      report.magnitudes[n]);
        out << line;
    }
}

}  // namespace ota
