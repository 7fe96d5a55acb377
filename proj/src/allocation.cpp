#include "ota/allocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ota {

ChannelRealization::ChannelRealization(std::vector<double> gains) {
    if (gains.empty()) throw std::invalid_argument("need at least one channel gain");
    for (double g : gains)
        if (!(g > 0.0)) throw std::invalid_argument("channel gains must be positive");
    int n = static_cast<int>(gains.size());
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return gains[static_cast<size_t>(a)] < gains[static_cast<size_t>(b)]; });
    sorted_.resize(static_cast<size_t>(n));
    perm_.resize(static_cast<size_t>(n));
    for (int rank = 0; rank < n; ++rank) {
        sorted_[static_cast<size_t>(rank)] = gains[static_cast<size_t>(order[static_cast<size_t>(rank)])];
        perm_[static_cast<size_t>(order[static_cast<size_t>(rank)])] = rank;
    }
}

std::vector<double> PowerAllocation::b_original_order(const ChannelRealization& h) const {
    std::vector<double> out(b.size());
    for (int i = 0; i < h.size(); ++i)
        out[static_cast<size_t>(i)] = b[static_cast<size_t>(h.sorted_index_of(i))];
    return out;
}

namespace {

// Shared KKT machinery for both policies; eps_num plays the role of the
// mean amplitude and eps_den the (summed) mean squared amplitude.
PowerAllocation solve_kkt(double eps_num, double eps_den, const ChannelRealization& h,
                          double P, double sigma2, double residual_per_device) {
    if (!(eps_den > 0.0)) throw std::invalid_argument("squared-amplitude moment must be > 0");
    if (!(P > 0.0)) throw std::invalid_argument("power bound must be > 0");
    if (sigma2 < 0.0) throw std::invalid_argument("noise power must be >= 0");

    const auto& hs = h.sorted();
    const int K = h.size();
    const double sqrtP = std::sqrt(P);

    double best_mse = std::numeric_limits<double>::infinity();
    double best_a = 0.0;
    int best_i = K;

    double sum_h = 0.0, sum_h2 = 0.0;
    for (int i = 1; i <= K; ++i) {
        sum_h += hs[static_cast<size_t>(i - 1)];
        sum_h2 += hs[static_cast<size_t>(i - 1)] * hs[static_cast<size_t>(i - 1)];
        double a_i = sqrtP * eps_num * sum_h / (P * eps_den * sum_h2 + sigma2);
        // Primal feasibility b_{i+1} <= sqrt(P); vacuous at i = K.
        if (i < K && a_i < eps_num / (sqrtP * hs[static_cast<size_t>(i)] * eps_den)) continue;
        double mse_i = a_i * a_i * (P * eps_den * sum_h2 + sigma2) -
                       2.0 * a_i * sqrtP * eps_num * sum_h +
                       (K - i) * residual_per_device + i;
        if (mse_i < best_mse) {
            best_mse = mse_i;
            best_a = a_i;
            best_i = i;
        }
    }
    if (!std::isfinite(best_mse)) {
        // Empty candidate set: fall back to all devices at max power, which
        // is always primal-feasible.
        double a_K = sqrtP * eps_num * sum_h / (P * eps_den * sum_h2 + sigma2);
        best_a = a_K;
        best_i = K;
        best_mse = a_K * a_K * (P * eps_den * sum_h2 + sigma2) -
                   2.0 * a_K * sqrtP * eps_num * sum_h + K;
    }

    PowerAllocation out;
    out.a = best_a;
    out.i_star = best_i;
    out.mse = best_mse;
    out.b.resize(static_cast<size_t>(K));
    for (int k = 0; k < K; ++k) {
        double inv = eps_num / (best_a * hs[static_cast<size_t>(k)] * eps_den);
        out.b[static_cast<size_t>(k)] = (k < best_i) ? sqrtP : std::min(sqrtP, inv);
    }
    return out;
}

}  // namespace

PowerAllocation solve_no_isi(double eps1, double eps2, const ChannelRealization& h, double P,
                             double sigma2) {
    double residual = 1.0 - eps1 * eps1 / eps2;
    return solve_kkt(eps1, eps2, h, P, sigma2, residual);
}

PowerAllocation solve_isi(const WaveformMoments& m, const ChannelRealization& h, double P,
                          double sigma2) {
    double residual = 1.0 - m.eps_check * m.eps_check / m.eps_hat;
    return solve_kkt(m.eps_check, m.eps_hat, h, P, sigma2, residual);
}

double mse_closed_form(double a, const std::vector<double>& b, const ChannelRealization& h,
                       const WaveformMoments& m, double sigma2) {
    const auto& hs = h.sorted();
    if (b.size() != hs.size()) throw std::invalid_argument("b/h dimension mismatch");
    double mse = sigma2 * a * a;
    for (size_t k = 0; k < hs.size(); ++k) {
        double g = a * b[k] * hs[k];
        mse += g * g * m.eps_hat - 2.0 * g * m.eps_check + 1.0;
    }
    return mse;
}

PowerAllocation oracle_grid_search(const WaveformMoments& m, const ChannelRealization& h,
                                   double P, double sigma2, int grid) {
    if (grid < 1000) throw std::invalid_argument("oracle grid must be >= 1000");
    const auto& hs = h.sorted();
    const int K = h.size();
    const double sqrtP = std::sqrt(P);

    // Bracket every stationary-candidate receiver gain.
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    double sum_h = 0.0, sum_h2 = 0.0;
    for (int i = 1; i <= K; ++i) {
        sum_h += hs[static_cast<size_t>(i - 1)];
        sum_h2 += hs[static_cast<size_t>(i - 1)] * hs[static_cast<size_t>(i - 1)];
        double a_i = sqrtP * m.eps_check * sum_h / (P * m.eps_hat * sum_h2 + sigma2);
        lo = std::min(lo, a_i);
        hi = std::max(hi, a_i);
    }
    lo *= 0.2;
    hi *= 5.0;

    PowerAllocation best;
    best.mse = std::numeric_limits<double>::infinity();
    std::vector<double> b(static_cast<size_t>(K));
    const double ratio = std::log(hi / lo);
    for (int g = 0; g < grid; ++g) {
        double a = lo * std::exp(ratio * g / (grid - 1));
        for (int k = 0; k < K; ++k)
            b[static_cast<size_t>(k)] =
                std::min(sqrtP, m.eps_check / (a * hs[static_cast<size_t>(k)] * m.eps_hat));
        double mse = mse_closed_form(a, b, h, m, sigma2);
        if (mse < best.mse) {
            best.mse = mse;
            best.a = a;
            best.b = b;
        }
    }
    best.i_star = 0;
    for (double bk : best.b)
        if (bk >= sqrtP * (1.0 - 1e-12)) ++best.i_star;
    return best;
}

}  // namespace ota
