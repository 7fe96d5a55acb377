#include <doctest.h>

#include <cmath>
#include <filesystem>

#include "ota/moments.hpp"
#include "oracles.hpp"

using namespace ota;

TEST_CASE("gauss-hermite sanity: low-order Gaussian moments") {
    const GaussHermite& gh = gauss_hermite(32);
    double w = 0.0, x2 = 0.0, x4 = 0.0;
    for (size_t i = 0; i < gh.nodes.size(); ++i) {
        w += gh.weights[i];
        x2 += gh.weights[i] * gh.nodes[i] * gh.nodes[i];
        x4 += gh.weights[i] * std::pow(gh.nodes[i], 4);
    }
    double sqrt_pi = std::sqrt(3.141592653589793238462643);
    CHECK(w == doctest::Approx(sqrt_pi).epsilon(1e-13));
    CHECK(x2 == doctest::Approx(0.5 * sqrt_pi).epsilon(1e-13));
    CHECK(x4 == doctest::Approx(0.75 * sqrt_pi).epsilon(1e-13));
}

TEST_CASE("quadrature node-doubling stability") {
    WaveformSpec rc = WaveformSpec::rc(0.5);
    for (double sig : {0.05, 0.1, 0.2}) {
        for (int q : {0, 1, 2}) {
            double m64 = moment_quadrature(rc, q, 2, sig, 64);
            double m128 = moment_quadrature(rc, q, 2, sig, 128);
            CHECK(std::fabs(m64 - m128) < 1e-10);
        }
    }
}

TEST_CASE("quadrature basics") {
    CHECK(moment_quadrature(WaveformSpec::rc(0.5), 0, 1, 0.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(moment_quadrature(WaveformSpec::rc(0.5), 0, 1, 0.1, 4),
                    std::invalid_argument);
}

TEST_CASE("mean amplitude series vs quadrature") {
    // sigma = 0 leaves only the constant term.
    CHECK(mean_amp_series(0.3, 0.0, 8) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(mean_sq_series(0.7, 0.0, 8) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(mean_amp_series(0.3, 0.1, 12) ==
          doctest::Approx(moment_quadrature(WaveformSpec::rc(0.3), 0, 1, 0.1)).epsilon(1e-6));
    // alpha = 0 reduces to the pure sinc expansion.
    CHECK(mean_amp_series(0.0, 0.1, 12) ==
          doctest::Approx(moment_quadrature(WaveformSpec::rc(0.0), 0, 1, 0.1)).epsilon(1e-6));
    CHECK(mean_sq_series(0.3, 0.1, 12) ==
          doctest::Approx(moment_quadrature(WaveformSpec::rc(0.3), 0, 2, 0.1)).epsilon(1e-6));
    CHECK(mean_sq_series(0.8, 0.2, 16) ==
          doctest::Approx(moment_quadrature(WaveformSpec::rc(0.8), 0, 2, 0.2)).epsilon(1e-4));
}

TEST_CASE("series grid agreement within 1e-4") {
    for (int ai = 0; ai <= 10; ++ai) {
        double alpha = 0.1 * ai;
        WaveformSpec rc = WaveformSpec::rc(alpha);
        for (double sig : {0.05, 0.1, 0.2}) {
            CHECK(std::fabs(mean_amp_series(alpha, sig, 16) -
                            moment_quadrature(rc, 0, 1, sig)) < 1e-4);
            CHECK(std::fabs(mean_sq_series(alpha, sig, 16) -
                            moment_quadrature(rc, 0, 2, sig)) < 1e-4);
        }
    }
}

TEST_CASE("series domain error at large jitter") {
    CHECK_THROWS_AS(mean_amp_series(0.3, 0.5, 16), std::domain_error);
    CHECK_THROWS_AS(mean_sq_series(0.3, 0.6, 16), std::domain_error);
    CHECK_THROWS_AS(isi_sq_series_alpha0(0.5), std::domain_error);
}

TEST_CASE("first-interferer series at alpha = 0") {
    CHECK(std::fabs(isi_sq_series_alpha0(0.0)) < 1e-12);  // sinc^2(1) = 0
    WaveformSpec sinc = WaveformSpec::rc(0.0);
    for (double sig : {0.05, 0.1, 0.2}) {
        double series = isi_sq_series_alpha0(sig, 10, 40);
        CHECK(series == doctest::Approx(moment_quadrature(sinc, 1, 2, sig)).epsilon(1e-6));
        // q = -1 equals q = +1 by evenness.
        CHECK(moment_quadrature(sinc, 1, 2, sig) ==
              doctest::Approx(moment_quadrature(sinc, -1, 2, sig)).epsilon(1e-10));
    }
}

TEST_CASE("cross-validation against a monte-carlo oracle") {
    WaveformSpec btrc = WaveformSpec::btrc(0.5);
    auto mc = oracle::mc_moment(btrc, 2, 2, 0.1, 1000000);
    double q = moment_quadrature(btrc, 2, 2, 0.1, 64);
    CHECK(std::fabs(q - mc.mean) < 3.0 * mc.std_err);

    WaveformSpec fit = WaveformSpec::fitted_preset(0.5);
    auto mc_fit = oracle::mc_moment(fit, 1, 2, 0.1, 1000000, 99);
    double q_fit = moment_quadrature(fit, 1, 2, 0.1, 64);
    CHECK(std::fabs(q_fit - mc_fit.mean) < 3.0 * mc_fit.std_err);
}

TEST_CASE("all_moments assembles the full set") {
    WaveformSpec rc = WaveformSpec::rc(0.3);
    WaveformMoments m = all_moments(rc, 0.0, 6);
    CHECK(m.eps_check == doctest::Approx(1.0));
    CHECK(m.eps_tilde.at(0) == doctest::Approx(1.0));
    for (int q : {-3, -2, -1, 1, 2, 3}) CHECK(std::fabs(m.eps_tilde.at(q)) < 1e-18);
    CHECK(m.eps_hat == doctest::Approx(1.0));

    WaveformMoments m2 = all_moments(WaveformSpec::rc(0.5), 0.1, 6);
    CHECK(m2.eps_hat > m2.eps_tilde.at(0));
    double sum = 0.0;
    for (const auto& [q, v] : m2.eps_tilde) {
        CHECK(v >= 0.0);
        sum += v;
    }
    CHECK(std::fabs(sum - m2.eps_hat) < 1e-12);

    CHECK_THROWS_AS(all_moments(rc, 0.1, 3), std::invalid_argument);
}

TEST_CASE("fitted preset moments match the monte-carlo oracle") {
    WaveformSpec fit = WaveformSpec::fitted_preset(0.5);
    WaveformMoments m = all_moments(fit, 0.1, 6);
    auto mc_amp = oracle::mc_moment(fit, 0, 1, 0.1, 1000000, 7);
    CHECK(std::fabs(m.eps_check - mc_amp.mean) < 3.0 * mc_amp.std_err);
    for (int q : {0, 1, 3}) {
        auto mc = oracle::mc_moment(fit, q, 2, 0.1, 1000000, 100 + static_cast<unsigned>(q));
        CHECK(std::fabs(m.eps_tilde.at(q) - mc.mean) < 3.0 * mc.std_err);
    }
}

TEST_CASE("moment symmetry and monotonicity in jitter") {
    for (double alpha : {0.1, 0.5, 1.0}) {
        WaveformSpec rc = WaveformSpec::rc(alpha);
        WaveformMoments m = all_moments(rc, 0.1, 6);
        for (int q : {1, 2, 3})
            CHECK(std::fabs(m.eps_tilde.at(q) - m.eps_tilde.at(-q)) < 1e-10);

        double prev_check = 2.0, prev_isi = -1.0;
        for (double sig : {0.05, 0.1, 0.15, 0.2}) {
            WaveformMoments ms = all_moments(rc, sig, 2);
            CHECK(ms.eps_check < prev_check);
            CHECK(ms.eps_tilde.at(1) > prev_isi);
            prev_check = ms.eps_check;
            prev_isi = ms.eps_tilde.at(1);
        }
    }
}

TEST_CASE("moments serialization round trip") {
    auto dir = std::filesystem::temp_directory_path() / "ota_mom_test";
    std::filesystem::create_directories(dir);
    WaveformMoments m = all_moments(WaveformSpec::btrc(0.3), 0.12, 4);
    std::string base = (dir / "m").string();
    write_moments(m, base);
    WaveformMoments back = read_moments(base);
    CHECK(back.eps_check == doctest::Approx(m.eps_check).epsilon(1e-15));
    CHECK(back.eps_hat == doctest::Approx(m.eps_hat).epsilon(1e-15));
    CHECK(back.sigma_eps == doctest::Approx(m.sigma_eps));
    CHECK(back.mu == m.mu);
    REQUIRE(back.eps_tilde.size() == m.eps_tilde.size());
    for (const auto& [q, v] : m.eps_tilde)
        CHECK(back.eps_tilde.at(q) == doctest::Approx(v).epsilon(1e-15));
    std::filesystem::remove_all(dir);
}
