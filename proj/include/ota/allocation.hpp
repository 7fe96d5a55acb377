// allocation.hpp - Closed-form optimal transmit/receive gain policies.
//
// Minimizes the aggregation MSE over the receiver gain a and per-device
// transmit gains b_k <= sqrt(P), for channels sorted in ascending order.
// The KKT solution puts the weakest i* devices at maximum power and gives
// every stronger device the inverse-channel gain eps_check/(a h_k eps_hat).

#pragma once

#include <vector>

#include "ota/moments.hpp"

namespace ota {

// Channel magnitudes sorted ascending, plus the permutation that recovers
// the caller's original device order.
class ChannelRealization {
public:
    explicit ChannelRealization(std::vector<double> gains);

    const std::vector<double>& sorted() const { return sorted_; }
    int size() const { return static_cast<int>(sorted_.size()); }

    // Index into sorted() for the caller's device i.
    int sorted_index_of(int original_index) const { return perm_[original_index]; }

private:
    std::vector<double> sorted_;
    std::vector<int> perm_;
};

struct PowerAllocation {
    double a = 0.0;               // receiver gain
    std::vector<double> b;        // transmit gains, sorted-channel order
    int i_star = 0;               // devices transmitting at sqrt(P)
    double mse = 0.0;             // objective value at the solution

    // b for the caller's original device order.
    std::vector<double> b_original_order(const ChannelRealization& h) const;
};

// Policy without intersymbol interference: eps1 = E[z(eps)],
// eps2 = E[z^2(eps)].
PowerAllocation solve_no_isi(double eps1, double eps2, const ChannelRealization& h, double P,
                             double sigma2);

// Policy with intersymbol interference, using eps_check and eps_hat from
// the full moment set. Collapses to solve_no_isi when the q != 0 moments
// vanish.
PowerAllocation solve_isi(const WaveformMoments& m, const ChannelRealization& h, double P,
                          double sigma2);

// sum_k ((a b_k h_k)^2 eps_tilde_0 + 1) - 2 sum_k a b_k h_k eps_check
//   + sum_{q != 0} sum_k (a b_k h_k)^2 eps_tilde_q + sigma2 a^2
double mse_closed_form(double a, const std::vector<double>& b, const ChannelRealization& h,
                       const WaveformMoments& m, double sigma2);

// Validation oracle: log-spaced scan over a bracketing every candidate
// receiver gain, per-coordinate-optimal b at each grid point.
PowerAllocation oracle_grid_search(const WaveformMoments& m, const ChannelRealization& h,
                                   double P, double sigma2, int grid = 2000);

}  // namespace ota
