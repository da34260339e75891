#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "nmep/spectra.hpp"

using namespace nmep;

namespace {

double dominant_fwhm(const PeakList& pl) {
    double h = -1.0, fw = 0.0;
    for (const auto& p : pl.peaks)
        if (p.height > h) {
            h = p.height;
            fw = p.fwhm;
        }
    return fw;
}

const Peak& dominant(const PeakList& pl) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pl.peaks.size(); ++i)
        if (pl.peaks[i].height > pl.peaks[best].height) best = i;
    return pl.peaks[best];
}

} // namespace

TEST_CASE("S_0 is the Lorentzian and S_n(0) alternates in sign") {
    const double gamma = 0.0071;
    const std::vector<double> om = symmetric_grid(20 * gamma, gamma / 200);
    const SpectrumGrid s0 = analytic_spectrum(0, om, gamma);
    const double peak = 1.0 / (std::numbers::pi * gamma);
    for (std::size_t i = 0; i < om.size(); ++i) {
        const double lorentz = gamma / std::numbers::pi / (om[i] * om[i] + gamma * gamma);
        CHECK(std::abs(s0.values[i].real() - lorentz) <= 1e-12 * peak);
    }
    CHECK(s0.values[om.size() / 2].real() == doctest::Approx(peak).epsilon(1e-14));

    const SpectrumGrid s1 = analytic_spectrum(1, om, gamma);
    CHECK(s1.values[om.size() / 2].real() == doctest::Approx(-peak).epsilon(1e-14));
}

TEST_CASE("analytic spectra are even in omega") {
    const std::vector<double> om = symmetric_grid(20.0, 1.0 / 200.0);
    for (int n = 0; n <= 10; ++n) {
        const SpectrumGrid s = analytic_spectrum(n, om, 1.0);
        double smax = 0.0, worst = 0.0;
        for (const auto& v : s.values) smax = std::max(smax, std::abs(v.real()));
        for (std::size_t i = 0; i < om.size(); ++i)
            worst = std::max(worst, std::abs(s.values[i].real() - s.values[om.size() - 1 - i].real()));
        CHECK(worst <= 1e-12 * smax);
    }
}

TEST_CASE("spectrum normalization: integral of S_n is delta_{n0}") {
    for (double gamma : {1.0, 0.0035})
        for (int n = 0; n <= 6; ++n)
            CHECK(std::abs(spectrum_integral(n, gamma) - (n == 0 ? 1.0 : 0.0)) <= 1e-6);
}

TEST_CASE("scale covariance: S_n(omega; gamma) = S_n(omega/gamma; 1)/gamma") {
    const std::vector<double> base = symmetric_grid(20.0, 1.0 / 200.0);
    for (int n : {0, 2, 5}) {
        const SpectrumGrid unit = analytic_spectrum(n, base, 1.0);
        const SpectrumGrid scaled = analytic_spectrum(n, symmetric_grid(40.0, 2.0 / 200.0), 2.0);
        double smax = 0.0, worst = 0.0;
        for (const auto& v : unit.values) smax = std::max(smax, std::abs(v.real()));
        for (std::size_t i = 0; i < base.size(); ++i)
            worst = std::max(worst, std::abs(scaled.values[i].real() - 0.5 * unit.values[i].real()));
        CHECK(worst <= 1e-12 * smax);
    }
}

TEST_CASE("peak detection on the analytic spectra") {
    const double gamma = 1.0;
    const std::vector<double> om = symmetric_grid(20 * gamma, gamma / 200);

    // n = 0: exactly one peak, at omega = 0
    const PeakList p0 = find_peaks(analytic_spectrum(0, om, gamma), true, gamma);
    REQUIRE(p0.peaks.size() == 1);
    CHECK(std::abs(p0.peaks[0].omega) <= p0.grid_spacing);

    // brute-force scanned counts, stable under grid refinement
    const std::vector<double> fine = symmetric_grid(20 * gamma, gamma / 400);
    std::size_t count3 = 0, count5 = 0;
    for (int n : {3, 5}) {
        const PeakList coarse = find_peaks(analytic_spectrum(n, om, gamma), true, gamma);
        const PeakList refined = find_peaks(analytic_spectrum(n, fine, gamma), true, gamma);
        CHECK(coarse.peaks.size() == refined.peaks.size());
        if (n == 3) count3 = coarse.peaks.size();
        if (n == 5) count5 = coarse.peaks.size();
    }
    CHECK(count3 == 7);    // measured stable count for |S_3|^2
    CHECK(count5 == 11);   // measured stable count for |S_5|^2
    CHECK(count5 >= count3);

    // peak positions are symmetric about 0
    const PeakList p5 = find_peaks(analytic_spectrum(5, om, gamma), true, gamma);
    for (const auto& p : p5.peaks) {
        if (p.omega <= 0.0) continue;
        bool mirrored = false;
        for (const auto& q : p5.peaks) mirrored = mirrored || std::abs(q.omega + p.omega) <= p5.grid_spacing;
        CHECK(mirrored);
    }

    // resolution preconditions
    CHECK_THROWS_AS(find_peaks(analytic_spectrum(3, symmetric_grid(20.0, 1.0 / 50.0), gamma), true, gamma),
                    invalid_config);
    CHECK_THROWS_AS(find_peaks(analytic_spectrum(3, symmetric_grid(5.0, 1.0 / 200.0), gamma), true, gamma),
                    invalid_config);
}

TEST_CASE("FWHM: closed form at n = 0, monotone narrowing, gamma scaling") {
    const double gamma = 1.0;
    const std::vector<double> om = symmetric_grid(20 * gamma, gamma / 200);

    // half max of the squared Lorentzian: FWHM = 2 gamma sqrt(sqrt(2) - 1)
    const PeakList p0 = find_peaks(analytic_spectrum(0, om, gamma), true, gamma);
    const double expect = 2.0 * gamma * std::sqrt(std::sqrt(2.0) - 1.0);
    CHECK(std::abs(p0.peaks[0].fwhm - expect) <= 1e-5 * gamma);
    CHECK(peak_fwhm(analytic_spectrum(0, om, gamma), p0, 0) == p0.peaks[0].fwhm);

    // dominant-peak width decreases with the order
    double prev = 1e300;
    for (int n = 1; n <= 6; ++n) {
        const double fw = dominant_fwhm(find_peaks(analytic_spectrum(n, om, gamma), true, gamma));
        CHECK(fw < prev);
        prev = fw;
    }

    // doubling gamma doubles every width (exact grid correspondence)
    const PeakList s1 = find_peaks(analytic_spectrum(3, om, gamma), true, gamma);
    const PeakList s2 =
        find_peaks(analytic_spectrum(3, symmetric_grid(40 * gamma, gamma / 100), 2 * gamma), true, 2 * gamma);
    REQUIRE(s1.peaks.size() == s2.peaks.size());
    for (std::size_t i = 0; i < s1.peaks.size(); ++i)
        CHECK(std::abs(s2.peaks[i].fwhm - 2.0 * s1.peaks[i].fwhm) <= 1e-12 * gamma);
}

TEST_CASE("windowed transform of a pure decay: Lorentzian peak of width 2 gamma") {
    const double gamma = 0.01;
    StateTrajectory traj;
    traj.method = EvolveMethod::eigenbasis;
    const int samples = 4000;
    const double t_max = 10.0 / gamma;
    for (int i = 0; i <= samples; ++i) {
        const double t = t_max * i / samples;
        traj.times.push_back(t);
        traj.a.push_back({std::exp(-gamma * t), 0.0});
    }
    const std::vector<double> om = symmetric_grid(20 * gamma, gamma / 200);
    const SpectrumGrid w = windowed_spectrum(traj, 0.0, t_max, om);
    const PeakList peaks = find_peaks(w, true, gamma);
    const Peak& dom = dominant(peaks);
    CHECK(std::abs(dom.omega) <= peaks.grid_spacing);
    CHECK(std::abs(dom.fwhm - 2.0 * gamma) <= 0.1 * 2.0 * gamma);   // leakage-limited
}

TEST_CASE("windowed transform edge cases") {
    StateTrajectory traj;
    traj.method = EvolveMethod::eigenbasis;
    for (int i = 0; i <= 100; ++i) {
        traj.times.push_back(0.5 * i);
        traj.a.push_back({0.0, 0.0});
    }
    const std::vector<double> om = symmetric_grid(20.0, 1.0 / 200.0);

    // zero signal -> identically zero spectrum
    const SpectrumGrid z = windowed_spectrum(traj, 0.0, 50.0, om);
    for (const auto& v : z.values) CHECK(std::abs(v) == 0.0);

    // degenerate window
    CHECK_THROWS_AS(windowed_spectrum(traj, 0.0, 2.0, om), invalid_config);
    // window outside the trajectory
    CHECK_THROWS_AS(windowed_spectrum(traj, 0.0, 500.0, om), invalid_config);

    // non-uniform trajectory grid
    traj.times[50] += 0.1;
    CHECK_THROWS_AS(windowed_spectrum(traj, 0.0, 50.0, om), invalid_config);
}

TEST_CASE("windowed spectrum of a simulated revival peaks with the analytic spectrum") {
    const double gamma = 0.0071, dw = 0.002;
    const SystemConfig c = config_from_rate(gamma, dw, 801);
    const Rates r = derive_rates(c);
    const int n = 2;
    const std::vector<double> grid = uniform_grid((n + 1) * r.T_R, (n + 1) * 2000);
    const StateTrajectory traj = evolve_eigenbasis(c, grid);
    const std::vector<double> om = symmetric_grid(20 * gamma, gamma / 200);

    const SpectrumGrid analytic = analytic_spectrum(n, om, gamma);
    const Peak& ref = dominant(find_peaks(analytic, true, gamma));

    for (double lo : {(n - 1) * r.T_R, n * r.T_R}) {
        const SpectrumGrid w = windowed_spectrum(traj, lo, lo + r.T_R, om, n);
        const Peak& dom = dominant(find_peaks(w, true, gamma));
        CHECK(std::abs(dom.omega - ref.omega) <= w.omegas[1] - w.omegas[0]);
    }
}

TEST_CASE("grid construction guards") {
    CHECK_THROWS_AS(symmetric_grid(-1.0, 0.1), invalid_config);
    std::vector<double> lopsided{-1.0, 0.0, 2.0};
    CHECK_THROWS_AS(analytic_spectrum(0, lopsided, 1.0), invalid_config);
}
