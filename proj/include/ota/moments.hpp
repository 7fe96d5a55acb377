// moments.hpp - Statistics of a pulse under Gaussian timing jitter.
//
// The power policies need the mean desynchronized amplitude
// eps_check = E[z(eps)], the mean squared amplitudes at symbol offsets
// eps_tilde[q] = E[z^2(q + eps)] with eps ~ N(0, sigma_eps^2), and their
// sum eps_hat. Production values come from Gauss-Hermite quadrature; the
// closed-form series for the raised cosine act as an independent
// validation path.

#pragma once

#include <map>
#include <string>

#include "ota/waveforms.hpp"

namespace ota {

struct WaveformMoments {
    double eps_check = 1.0;            // E[z(eps)]
    std::map<int, double> eps_tilde;   // q -> E[z^2(q + eps)], |q| <= mu/2
    double eps_hat = 1.0;              // sum over q of eps_tilde[q]
    double sigma_eps = 0.0;
    int mu = 0;
};

// Nodes and weights for n-point Gauss-Hermite quadrature against weight
// exp(-x^2) (Golub-Welsch). Exact for polynomials of degree < 2n.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussHermite& gauss_hermite(int n);

// E[z^power(q + eps)], eps ~ N(0, sigma_eps^2), by Gauss-Hermite quadrature.
double moment_quadrature(const WaveformSpec& spec, int q, int power, double sigma_eps,
                         int nodes = 64);

// Raised-cosine mean amplitude E[z(eps)] from the Taylor-series expansion of
// sinc * cos times the geometric expansion of the fractional term, combined
// with Gaussian moment identities. Valid for sigma_eps < 0.5 (geometric
// factor converges); throws std::domain_error at or beyond 0.5.
double mean_amp_series(double alpha, double sigma_eps, int m_max);

// Same construction for the mean squared amplitude E[z^2(eps)].
double mean_sq_series(double alpha, double sigma_eps, int p_max);

// E[sinc^2(1 + eps)] for the alpha = 0 raised cosine (first interfering
// symbol), from the binomial-expanded sinc series. Equals the q = -1 moment
// by symmetry.
double isi_sq_series_alpha0(double sigma_eps, int m_max = 10, int n_max = 40);

// Assemble all moments for |q| <= mu/2 by quadrature. mu must be even.
WaveformMoments all_moments(const WaveformSpec& spec, double sigma_eps, int mu,
                            int nodes = 64);

// Two-file serialization: "<base>.csv" with header "q,eps_tilde_q" and
// "<base>.info" with key=value scalars.
void write_moments(const WaveformMoments& m, const std::string& base);
WaveformMoments read_moments(const std::string& base);

}  // namespace ota
