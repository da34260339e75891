#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nmep/config.hpp"
#include "nmep/dynamics.hpp"
#include "nmep/parallel.hpp"
#include "nmep/quadrature.hpp"

namespace nmep {

enum class SpectrumKind { analytic, windowed };

// Frequency grid with spectral values: real S_n(omega) for the analytic
// closed form (stored in the real part), complex for windowed transforms.
struct SpectrumGrid {
    std::vector<double> omegas;                 // uniform, symmetric about 0
    std::vector<std::complex<double>> values;
    int order = 0;
    SpectrumKind kind = SpectrumKind::analytic;

    double spacing() const { return omegas.size() > 1 ? omegas[1] - omegas[0] : 0.0; }
};

// Uniform grid -span, ..., +span (odd point count, exactly symmetric).
inline std::vector<double> symmetric_grid(double span, double step) {
    if (!(span > 0.0) || !(step > 0.0)) throw invalid_config("symmetric_grid: span and step must be positive");
    const int half = static_cast<int>(std::round(span / step));
    std::vector<double> om(2 * static_cast<std::size_t>(half) + 1);
    for (int i = -half; i <= half; ++i) om[static_cast<std::size_t>(i + half)] = i * step;
    return om;
}

namespace detail {

inline void require_symmetric_uniform(const std::vector<double>& om) {
    if (om.size() < 3) throw invalid_config("spectrum grid needs at least 3 points");
    const double h = om[1] - om[0];
    if (!(h > 0.0)) throw invalid_config("spectrum grid must be increasing");
    for (std::size_t i = 1; i + 1 < om.size(); ++i)
        if (std::abs((om[i + 1] - om[i]) - h) > 1e-9 * h)
            throw invalid_config("spectrum grid must be uniform");
    if (std::abs(om.front() + om.back()) > 1e-9 * h)
        throw invalid_config("spectrum grid must be symmetric about 0");
}

} // namespace detail

// Revival spectrum in closed form,
//   S_n(omega) = Re[(gamma/pi) (omega - i gamma)^{n-1} / (omega + i gamma)^{n+1}]
//              = (gamma/pi) Re[q^n] / (omega^2 + gamma^2),  q = (omega-ig)/(omega+ig).
inline SpectrumGrid analytic_spectrum(int n, std::vector<double> omegas, double gamma) {
    if (n < 0) throw std::domain_error("analytic_spectrum: order must be >= 0");
    if (!(gamma > 0.0)) throw invalid_config("analytic_spectrum: gamma must be positive");
    detail::require_symmetric_uniform(omegas);

    SpectrumGrid g;
    g.order = n;
    g.kind = SpectrumKind::analytic;
    g.values.resize(omegas.size());
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        const double w = omegas[i];
        const std::complex<double> num{w, -gamma};
        const std::complex<double> den{w, gamma};
        std::complex<double> qn{1.0, 0.0};
        const std::complex<double> q = num / den;
        for (int p = 0; p < n; ++p) qn *= q;
        g.values[i] = {(gamma / std::numbers::pi) * qn.real() / (w * w + gamma * gamma), 0.0};
    }
    g.omegas = std::move(omegas);
    return g;
}

// Rectangular-window discrete Fourier transform of the oscillator amplitude
// over [t_lo, t_hi], evaluated by direct summation at arbitrary omega:
//   S(omega) = (dt / 2 pi) sum_j a(t_j) e^{+i omega t_j}.
// The normalization makes the transform of e^{-gamma t} over a long window
// approach the gamma-Lorentzian kernel.
inline SpectrumGrid windowed_spectrum(const StateTrajectory& traj,
                                      double t_lo, double t_hi,
                                      std::vector<double> omegas,
                                      int order = 0) {
    detail::require_symmetric_uniform(omegas);
    if (traj.times.size() < 2) throw invalid_config("windowed_spectrum: trajectory too short");
    const double dt = traj.times[1] - traj.times[0];
    for (std::size_t i = 1; i + 1 < traj.times.size(); ++i)
        if (std::abs((traj.times[i + 1] - traj.times[i]) - dt) > 1e-9 * dt)
            throw invalid_config("windowed_spectrum: non-uniform trajectory grid");
    if (t_lo < traj.times.front() - 1e-9 * dt || t_hi > traj.times.back() + 1e-9 * dt || !(t_hi > t_lo))
        throw invalid_config("windowed_spectrum: window outside the trajectory");

    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        if (traj.times[i] < t_lo - 0.5 * dt) lo = i + 1;
        if (traj.times[i] <= t_hi + 0.5 * dt) hi = i;
    }
    if (hi < lo + 9) throw invalid_config("windowed_spectrum: degenerate window (fewer than 10 samples)");

    SpectrumGrid g;
    g.order = order;
    g.kind = SpectrumKind::windowed;
    g.values.resize(omegas.size());
    const double scale = dt / (2.0 * std::numbers::pi);
    parallel_for(omegas.size(), [&](std::size_t i) {
        const double w = omegas[i];
        std::complex<double> acc{0.0, 0.0};
        for (std::size_t j = lo; j <= hi; ++j)
            acc += traj.a[j] * std::polar(1.0, w * traj.times[j]);
        g.values[i] = scale * acc;
    });
    g.omegas = std::move(omegas);
    return g;
}

struct Peak {
    double omega = 0.0;
    double height = 0.0;   // |S|^2 at the maximum
    double fwhm = 0.0;     // NaN when a half-maximum crossing leaves the grid
    std::size_t index = 0; // grid index of the maximum
};

struct PeakList {
    std::vector<Peak> peaks;       // position ascending
    double grid_spacing = 0.0;
    double merge_radius = 0.0;
};

namespace detail {

// Half-maximum width of |S|^2 around a local maximum, linear interpolation of
// the two crossings.
inline double fwhm_at(const std::vector<double>& om, const std::vector<double>& p2, std::size_t ipk) {
    const double half = 0.5 * p2[ipk];
    std::size_t r = ipk;
    while (r + 1 < p2.size() && p2[r + 1] > half) ++r;
    if (r + 1 >= p2.size()) throw solver_error("peak_fwhm: right half-maximum crossing outside the grid");
    const double xr = om[r] + (om[r + 1] - om[r]) * (p2[r] - half) / (p2[r] - p2[r + 1]);
    std::size_t l = ipk;
    while (l > 0 && p2[l - 1] > half) --l;
    if (l == 0) throw solver_error("peak_fwhm: left half-maximum crossing outside the grid");
    const double xl = om[l] - (om[l] - om[l - 1]) * (p2[l] - half) / (p2[l] - p2[l - 1]);
    return xr - xl;
}

} // namespace detail

// Local maxima of |S|^2 (or of the raw real values when magnitude is off):
// strictly greater than both neighbours, maxima closer than gamma/100 merged
// keeping the higher.  The grid must resolve the structure: spacing <=
// gamma/200 over at least [-20 gamma, 20 gamma].
inline PeakList find_peaks(const SpectrumGrid& spectrum, bool magnitude, double gamma) {
    if (!(gamma > 0.0)) throw invalid_config("find_peaks: gamma must be positive");
    const double h = spectrum.spacing();
    if (h > gamma / 200.0 * (1.0 + 1e-9))
        throw invalid_config("find_peaks: grid too coarse (need spacing <= gamma/200)");
    if (spectrum.omegas.front() > -20.0 * gamma + 1e-9 || spectrum.omegas.back() < 20.0 * gamma - 1e-9)
        throw invalid_config("find_peaks: grid too narrow (need at least [-20 gamma, 20 gamma])");

    std::vector<double> target(spectrum.values.size());
    for (std::size_t i = 0; i < spectrum.values.size(); ++i)
        target[i] = magnitude ? std::norm(spectrum.values[i]) : spectrum.values[i].real();

    std::vector<double> p2(spectrum.values.size());
    for (std::size_t i = 0; i < spectrum.values.size(); ++i) p2[i] = std::norm(spectrum.values[i]);

    PeakList list;
    list.grid_spacing = h;
    list.merge_radius = gamma / 100.0;
    std::vector<Peak> found;
    for (std::size_t i = 1; i + 1 < target.size(); ++i) {
        if (target[i] > target[i - 1] && target[i] > target[i + 1]) {
            Peak p;
            p.omega = spectrum.omegas[i];
            p.height = p2[i];
            p.index = i;
            found.push_back(p);
        }
    }
    // merge close maxima, keep the higher
    for (const Peak& p : found) {
        if (!list.peaks.empty() && p.omega - list.peaks.back().omega < list.merge_radius) {
            if (p.height > list.peaks.back().height) list.peaks.back() = p;
        } else {
            list.peaks.push_back(p);
        }
    }
    for (Peak& p : list.peaks) {
        try {
            p.fwhm = detail::fwhm_at(spectrum.omegas, p2, p.index);
        } catch (const solver_error&) {
            p.fwhm = std::numeric_limits<double>::quiet_NaN();
        }
    }
    return list;
}

// FWHM of |S|^2 around the chosen peak.
inline double peak_fwhm(const SpectrumGrid& spectrum, const PeakList& peaks, std::size_t index) {
    if (index >= peaks.peaks.size()) throw invalid_config("peak_fwhm: peak index out of range");
    std::vector<double> p2(spectrum.values.size());
    for (std::size_t i = 0; i < spectrum.values.size(); ++i) p2[i] = std::norm(spectrum.values[i]);
    return detail::fwhm_at(spectrum.omegas, p2, peaks.peaks[index].index);
}

// Integral of S_n over the real line by the tangent substitution
// omega = gamma tan(theta) on a fixed Gauss-Legendre rule; equals a_n(0),
// i.e. 1 for n = 0 and 0 otherwise.
inline double spectrum_integral(int n, double gamma) {
    if (n < 0) throw std::domain_error("spectrum_integral: order must be >= 0");
    static const QuadratureRule rule = gauss_legendre(kRevivalQuadratureNodes);
    double sum = 0.0;
    for (int i = 0; i < kRevivalQuadratureNodes; ++i) {
        const double theta = 0.5 * std::numbers::pi * rule.nodes[i];
        const double c = std::cos(theta);
        const double w = gamma * std::sin(theta) / c;
        const std::complex<double> q = std::complex<double>{w, -gamma} / std::complex<double>{w, gamma};
        std::complex<double> qn{1.0, 0.0};
        for (int p = 0; p < n; ++p) qn *= q;
        const double s = (gamma / std::numbers::pi) * qn.real() / (w * w + gamma * gamma);
        sum += rule.weights[i] * s * gamma / (c * c);
    }
    return 0.5 * std::numbers::pi * sum;
}

} // namespace nmep
