// dft.hpp - Real-input DFT helpers used for spectra and spectral penalties.
//
// Backed by FFTW (plans cached per length, FFTW_ESTIMATE so transforms are
// deterministic). One-sided convention: bins 0..floor(N/2) of the N-point
// transform of a real sequence.

#pragma once

#include <complex>
#include <vector>

namespace ota {

// One-sided complex spectrum of a real sequence (unnormalized forward DFT).
std::vector<std::complex<double>> real_dft(const std::vector<double>& x);

// One-sided magnitudes |X[n]|, n = 0..floor(N/2).
std::vector<double> real_dft_magnitude(const std::vector<double>& x);

// Adjoint step for loss gradients through one-sided magnitudes: given
// per-bin complex coefficients c[n] (n = 0..floor(N/2)), returns
//   out[m] = sum_n Re(c[n] * exp(+2*pi*i*n*m/N)),   m = 0..N-1,
// each one-sided bin counted once.
std::vector<double> real_dft_adjoint(const std::vector<std::complex<double>>& c, int n_total);

}  // namespace ota
