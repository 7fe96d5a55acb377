#include "ota/dft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace ota {

namespace {

// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex g_plan_mutex;

struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
    int n = 0;
};

PlanPair& plan_for(int n) {
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    PlanPair p;
    p.n = n;
    double* re = fftw_alloc_real(static_cast<size_t>(n));
    fftw_complex* cx = fftw_alloc_complex(static_cast<size_t>(n / 2 + 1));
    p.r2c = fftw_plan_dft_r2c_1d(n, re, cx, FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r_1d(n, cx, re, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(re);
    fftw_free(cx);
    return cache.emplace(n, p).first->second;
}

}  // namespace

std::vector<std::complex<double>> real_dft(const std::vector<double>& x) {
    if (x.empty()) throw std::invalid_argument("real_dft: empty input");
    int n = static_cast<int>(x.size());
    PlanPair& p = plan_for(n);
    std::vector<double> in(x);
    std::vector<std::complex<double>> out(static_cast<size_t>(n / 2 + 1));
    fftw_execute_dft_r2c(p.r2c, in.data(), reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

std::vector<double> real_dft_magnitude(const std::vector<double>& x) {
    auto spec = real_dft(x);
    std::vector<double> mag(spec.size());
    for (size_t i = 0; i < spec.size(); ++i) mag[i] = std::abs(spec[i]);
    return mag;
}

std::vector<double> real_dft_adjoint(const std::vector<std::complex<double>>& c, int n_total) {
    if (n_total <= 0) throw std::invalid_argument("real_dft_adjoint: bad length");
    size_t half = static_cast<size_t>(n_total / 2 + 1);
    if (c.size() != half) throw std::invalid_argument("real_dft_adjoint: bin count mismatch");

    // FFTW's c2r computes d[0] + 2*sum_{0<n<N/2} Re(d[n] e^{i th}) (+ Nyquist
    // for even N), so interior bins are passed at half weight to count each
    // one-sided bin exactly once.
    std::vector<std::complex<double>> d(c);
    bool even = (n_total % 2 == 0);
    for (size_t nidx = 1; nidx + 1 < half; ++nidx) d[nidx] *= 0.5;
    if (!even && half >= 2) d[half - 1] *= 0.5;  // odd N: last bin is interior too
    d[0] = std::complex<double>(d[0].real(), 0.0);
    if (even) d[half - 1] = std::complex<double>(d[half - 1].real(), 0.0);

    PlanPair& p = plan_for(n_total);
    std::vector<double> out(static_cast<size_t>(n_total));
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(d.data()), out.data());
    return out;
}

}  // namespace ota
