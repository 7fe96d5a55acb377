#include "ota/moments.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ota {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kInnerCutoff = 1e-16;

// (n)!! with (-1)!! = 1, n odd.
double double_factorial(int n) {
    double r = 1.0;
    for (int k = n; k > 1; k -= 2) r *= k;
    return r;
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// Taylor coefficient of eps^(2m) in sinc(eps) * cos(pi alpha eps).
double kappa_coeff(int m, double alpha) {
    double s = 0.0;
    for (int n = 0; n <= m; ++n) {
        double apow = (m == n) ? 1.0 : std::pow(alpha, 2 * (m - n));
        s += apow / (factorial(2 * n + 1) * factorial(2 * m - 2 * n));
    }
    double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(kPi, 2 * m) * s;
}

// Taylor coefficient of eps^(2p) in (sinc(eps) * cos(pi alpha eps))^2.
double lambda_coeff(int p, double alpha) {
    double s = 0.0;
    for (int n = 0; n <= p; ++n) {
        for (int l = 0; l <= p - n; ++l) {
            double apow = (p == n + l) ? 1.0 : std::pow(alpha, 2 * (p - l - n));
            for (int k = 0; k <= p - n - l; ++k) {
                s += apow / (factorial(2 * n + 1) * factorial(2 * l + 1) * factorial(2 * k) *
                             factorial(2 * (p - n - l - k)));
            }
        }
    }
    double sign = (p % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(kPi, 2 * p) * s;
}

void check_series_domain(double sigma_eps) {
    if (sigma_eps < 0.0) throw std::domain_error("sigma_eps must be >= 0");
    if (sigma_eps >= 0.5)
        throw std::domain_error("series diverges for sigma_eps >= 0.5");
}

}  // namespace

const GaussHermite& gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: need n >= 1");
    static std::map<int, GaussHermite> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    // Golub-Welsch: Jacobi matrix for Hermite polynomials has zero diagonal
    // and off-diagonal sqrt(k/2); eigenvalues are the nodes, weights are
    // sqrt(pi) times the squared first eigenvector components.
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        double off = std::sqrt(0.5 * k);
        J(k, k - 1) = off;
        J(k - 1, k) = off;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussHermite gh;
    gh.nodes.resize(static_cast<size_t>(n));
    gh.weights.resize(static_cast<size_t>(n));
    const double sqrt_pi = std::sqrt(kPi);
    for (int i = 0; i < n; ++i) {
        gh.nodes[static_cast<size_t>(i)] = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        gh.weights[static_cast<size_t>(i)] = sqrt_pi * v0 * v0;
    }
    return cache.emplace(n, std::move(gh)).first->second;
}

double moment_quadrature(const WaveformSpec& spec, int q, int power, double sigma_eps,
                         int nodes) {
    if (nodes < 8) throw std::invalid_argument("moment_quadrature: need >= 8 nodes");
    if (power != 1 && power != 2) throw std::invalid_argument("power must be 1 or 2");
    if (sigma_eps < 0.0) throw std::domain_error("sigma_eps must be >= 0");
    if (sigma_eps == 0.0) {
        double z = sample(spec, static_cast<double>(q));
        return power == 1 ? z : z * z;
    }
    const GaussHermite& gh = gauss_hermite(nodes);
    const double scale = std::sqrt(2.0) * sigma_eps;
    double acc = 0.0;
    for (size_t i = 0; i < gh.nodes.size(); ++i) {
        double z = sample(spec, q + scale * gh.nodes[i]);
        acc += gh.weights[i] * (power == 1 ? z : z * z);
    }
    return acc / std::sqrt(kPi);
}

double mean_amp_series(double alpha, double sigma_eps, int m_max) {
    check_series_domain(sigma_eps);
    if (m_max < 1) throw std::invalid_argument("m_max must be >= 1");
    std::vector<double> kap(static_cast<size_t>(m_max) + 1);
    for (int m = 0; m <= m_max; ++m) kap[static_cast<size_t>(m)] = kappa_coeff(m, alpha);

    const double x = 4.0 * alpha * alpha;  // geometric ratio of 1/(1 - 4 a^2 e^2)
    double sum = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        double c = 0.0, xj = 1.0;
        for (int j = 0; j <= m; ++j) {
            c += kap[static_cast<size_t>(m - j)] * xj;
            xj *= x;
        }
        double term = c * std::pow(sigma_eps, 2 * m) * double_factorial(2 * m - 1);
        sum += term;
        if (m > 0 && std::fabs(term) < kInnerCutoff) break;
    }
    return sum;
}

double mean_sq_series(double alpha, double sigma_eps, int p_max) {
    check_series_domain(sigma_eps);
    if (p_max < 1) throw std::invalid_argument("p_max must be >= 1");
    std::vector<double> lam(static_cast<size_t>(p_max) + 1);
    for (int p = 0; p <= p_max; ++p) lam[static_cast<size_t>(p)] = lambda_coeff(p, alpha);

    // 1/(1 - x)^2 = sum_j (j + 1) x^j
    const double x = 4.0 * alpha * alpha;
    double sum = 0.0;
    for (int p = 0; p <= p_max; ++p) {
        double c = 0.0, xj = 1.0;
        for (int j = 0; j <= p; ++j) {
            c += lam[static_cast<size_t>(p - j)] * (j + 1) * xj;
            xj *= x;
        }
        double term = c * std::pow(sigma_eps, 2 * p) * double_factorial(2 * p - 1);
        sum += term;
        if (p > 0 && std::fabs(term) < kInnerCutoff) break;
    }
    return sum;
}

double isi_sq_series_alpha0(double sigma_eps, int m_max, int n_max) {
    check_series_domain(sigma_eps);
    // Coefficients of eps^n in sinc(1 + eps): A_n (n odd), B_n (n even).
    // Both are tails of the alternating series sum_l (-1)^l pi^(2l)/(2l+1)! C(2l, n).
    int n_count = 2 * m_max + 1;
    std::vector<double> A(static_cast<size_t>(n_count), 0.0);
    std::vector<double> B(static_cast<size_t>(n_count), 0.0);
    for (int n = 0; n < n_count; ++n) {
        int l0 = (n % 2 == 1) ? (n + 1) / 2 : n / 2;
        double s = 0.0;
        for (int l = l0; l <= l0 + n_max; ++l) {
            // (-1)^l pi^(2l) / (2l+1)! * C(2l, n), built in log space to
            // keep 2l up to ~100 stable.
            double ln_term = 2.0 * l * std::log(kPi) - std::lgamma(2.0 * l + 2.0) +
                             std::lgamma(2.0 * l + 1.0) - std::lgamma(n + 1.0) -
                             std::lgamma(2.0 * l - n + 1.0);
            double term = std::exp(ln_term);
            if (l % 2 == 1) term = -term;
            s += term;
            if (std::fabs(term) < kInnerCutoff && l > l0 + 4) break;
        }
        if (n % 2 == 1)
            A[static_cast<size_t>(n)] = s;
        else
            B[static_cast<size_t>(n)] = s;
    }

    // E[sinc^2(1 + eps)] = sum_m (sum_n A_n A_{2m-n} + B_n B_{2m-n})
    //                      sigma^(2m) (2m-1)!!.
    // The m = 0 term is B_0^2 = sinc^2(1) = 0.
    double sum = 0.0;
    for (int m = 0; m <= m_max; ++m) {
        double inner = 0.0;
        for (int n = 0; n <= 2 * m; ++n) {
            inner += A[static_cast<size_t>(n)] * A[static_cast<size_t>(2 * m - n)] +
                     B[static_cast<size_t>(n)] * B[static_cast<size_t>(2 * m - n)];
        }
        sum += inner * std::pow(sigma_eps, 2 * m) * double_factorial(2 * m - 1);
    }
    return sum;
}

WaveformMoments all_moments(const WaveformSpec& spec, double sigma_eps, int mu, int nodes) {
    if (mu < 0 || mu % 2 != 0) throw std::invalid_argument("mu must be even");
    WaveformMoments m;
    m.sigma_eps = sigma_eps;
    m.mu = mu;
    m.eps_check = moment_quadrature(spec, 0, 1, sigma_eps, nodes);
    m.eps_hat = 0.0;
    for (int q = -mu / 2; q <= mu / 2; ++q) {
        double v = moment_quadrature(spec, q, 2, sigma_eps, nodes);
        m.eps_tilde[q] = v;
        m.eps_hat += v;
    }
    return m;
}

void write_moments(const WaveformMoments& m, const std::string& base) {
    {
        std::ofstream csv(base + ".csv");
        if (!csv) throw std::runtime_error("cannot write " + base + ".csv");
        csv << "q,eps_tilde_q\n";
        char line[64];
        for (const auto& [q, v] : m.eps_tilde) {
            std::snprintf(line, sizeof line, "%d,%.17g\n", q, v);
            csv << line;
        }
    }
    std::ofstream info(base + ".info");
    if (!info) throw std::runtime_error("cannot write " + base + ".info");
    char buf[256];
    std::snprintf(buf, sizeof buf,
                  "eps_check=%.17g\neps_hat=%.17g\nsigma_eps=%.17g\nmu=%d\n", m.eps_check,
                  m.eps_hat, m.sigma_eps, m.mu);
    info << buf;
}

WaveformMoments read_moments(const std::string& base) {
    WaveformMoments m;
    {
        std::ifstream csv(base + ".csv");
        if (!csv) throw std::runtime_error("cannot read " + base + ".csv");
        std::string line;
        std::getline(csv, line);
        if (line != "q,eps_tilde_q")
            throw std::runtime_error(base + ".csv: expected header 'q,eps_tilde_q'");
        while (std::getline(csv, line)) {
            if (line.empty()) continue;
            size_t comma = line.find(',');
            m.eps_tilde[std::stoi(line.substr(0, comma))] = std::stod(line.substr(comma + 1));
        }
    }
    std::ifstream info(base + ".info");
    if (!info) throw std::runtime_error("cannot read " + base + ".info");
    std::string line;
    while (std::getline(info, line)) {
        if (line.empty()) continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos) throw std::runtime_error(base + ".info: malformed line");
        std::string key = line.substr(0, eq), val = line.substr(eq + 1);
        if (key == "eps_check")
            m.eps_check = std::stod(val);
        else if (key == "eps_hat")
            m.eps_hat = std::stod(val);
        else if (key == "sigma_eps")
            m.sigma_eps = std::stod(val);
        else if (key == "mu")
            m.mu = std::stoi(val);
        else
            throw std::runtime_error(base + ".info: unknown key " + key);
    }
    return m;
}

}  // namespace ota
