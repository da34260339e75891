#pragma once

#include <cmath>
#include <vector>

#include "nmep/arrowhead.hpp"
#include "nmep/config.hpp"
#include "nmep/digamma.hpp"
#include "nmep/dynamics.hpp"
#include "nmep/ep_chain.hpp"
#include "nmep/eigenmodes.hpp"
#include "nmep/jacobi.hpp"
#include "nmep/manifest.hpp"
#include "nmep/quadrature.hpp"
#include "nmep/revivals.hpp"
#include "nmep/spectra.hpp"

namespace nmep::verify {

inline CheckResult check(const std::string& name, double measured, double tolerance) {
    return CheckResult{name, measured, tolerance, measured <= tolerance};
}

// Mixed relative tolerance with the decaying envelope e^{-gamma t} as the
// floor, so exact zero crossings of a_n do not blow up the ratio.
inline double rel_diff(double x, double y, double floor_scale) {
    const double scale = std::max({std::abs(x), std::abs(y), floor_scale});
    return std::abs(x - y) / scale;
}

// --- model ------------------------------------------------------------------

inline void model_checks(std::vector<CheckResult>& out) {
    const SystemConfig c = config_from_rate(0.0035, 0.002, 101);
    const Rates r = derive_rates(c);
    const double g_back = coupling_for_rate(r.gamma, c.delta_omega);
    out.push_back(check("model.rate_round_trip", std::abs(g_back - c.coupling) / c.coupling, 1e-14));

    // power-of-two step: mode frequencies must be exactly equidistant
    SystemConfig c2 = c;
    c2.delta_omega = 0.001953125;   // 2^-9
    c2.coupling = coupling_for_rate(0.0035, c2.delta_omega);
    const CoupledSystemMatrix m2 = build_matrix(c2);
    double worst = 0.0;
    for (int j = 2; j < m2.dimension - 1; ++j)
        worst = std::max(worst, std::abs((m2.diagonal[j + 1] - m2.diagonal[j]) - c2.delta_omega));
    out.push_back(check("model.equidistant_bitexact", worst, 0.0));

    const CoupledSystemMatrix m = build_matrix(c);
    const std::vector<double> dense = m.dense();
    double leak = 0.0;
    for (int i = 1; i < m.dimension; ++i)
        for (int j = 1; j < m.dimension; ++j)
            if (i != j) leak = std::max(leak, std::abs(dense[static_cast<std::size_t>(i) * m.dimension + j]));
    out.push_back(check("model.arrowhead_zeros", leak, 0.0));
}

// --- eigen ------------------------------------------------------------------

inline void eigen_checks(std::vector<CheckResult>& out, bool full) {
    const double gamma = 0.0035, dw = 0.002;

    double anti = 0.0;
    for (int k = 1; k <= 50; ++k)
        anti = std::max(anti, std::abs(solve_alpha_infinite(-k, gamma, dw) + solve_alpha_infinite(k, gamma, dw)));
    out.push_back(check("eigen.alpha_antisymmetry", anti, 1e-13));

    int bracket_failures = 0;
    for (int k = 0; k <= 50; ++k) {
        const double flo = alpha_equation_infinite(0.0, k, gamma, dw);
        const double fhi = alpha_equation_infinite(dw, k, gamma, dw);
        if (!(flo < 0.0 && fhi > 0.0)) ++bracket_failures;
    }
    out.push_back(check("eigen.bracket_sign_change", bracket_failures, 0.0));

    out.push_back(check("eigen.digamma_euler",
                        std::abs(digamma(1.0) + 0.57721566490153286), 1e-13));

    const SystemConfig c = config_from_rate(gamma, dw, full ? 201 : 61);
    const EigenDecomposition fin = finite_decomposition(c);
    const EigenDecomposition dense = diagonalize_oracle(build_matrix(c), c);
    double root_diff = 0.0, weight_diff = 0.0, residual = 0.0;
    for (std::size_t i = 0; i < fin.modes.size(); ++i) {
        root_diff = std::max(root_diff, std::abs(fin.modes[i].omega_tilde - dense.modes[i].omega_tilde));
        weight_diff = std::max(weight_diff, std::abs(fin.modes[i].weight - dense.modes[i].weight));
        residual = std::max(residual, std::abs(eigen_residual(dense.modes[i].omega_tilde, c)));
    }
    out.push_back(check("eigen.finite_vs_dense_roots", root_diff / dw, 1e-10));
    out.push_back(check("eigen.exact_weight_vs_dense", weight_diff, 1e-8));
    out.push_back(check("eigen.pole_residual_at_dense", residual, 1e-9));
    out.push_back(check("eigen.finite_completeness", std::abs(fin.weight_sum() - 1.0), 1e-10));

    const int K = default_k_max(gamma, dw);
    const EigenDecomposition inf = infinite_truncated_decomposition(config_from_rate(gamma, dw, 4001), K);
    const double tail_bound = 2.0 * gamma / (std::numbers::pi * K * dw);
    out.push_back(check("eigen.truncated_completeness", std::abs(inf.weight_sum() - 1.0), 2.0 * tail_bound));
}

// --- dynamics ---------------------------------------------------------------

inline void dynamics_checks(std::vector<CheckResult>& out, bool full) {
    const double gamma = 0.0035, dw = 0.002;
    const SystemConfig c = config_from_rate(gamma, dw, full ? 401 : 61);
    const Rates r = derive_rates(c);

    const std::vector<double> tshort = uniform_grid(0.5 * r.T_R, 100);
    const StateTrajectory eig = evolve_eigenbasis(c, tshort, EigenbasisMode::finite, /*store_b=*/true);
    double norm_dev = 0.0;
    for (double nv : total_norm(eig)) norm_dev = std::max(norm_dev, std::abs(nv - 1.0));
    out.push_back(check("dynamics.eigenbasis_unitarity", norm_dev, 1e-10));

    const double horizon = full ? 2.0 * r.T_R : 0.5 * r.T_R;
    const std::vector<double> tgrid = uniform_grid(horizon, full ? 1000 : 100);
    const StateTrajectory eig2 = full ? evolve_eigenbasis(c, tgrid) : eig;
    const StateTrajectory rk = evolve_rk4(c, tgrid, rk4_step_bound(c));
    double diff = 0.0;
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        diff = std::max(diff, std::abs(eig2.a[i] - rk.a[i]));
    out.push_back(check("dynamics.rk4_vs_eigenbasis", diff, 1e-6));

    const StateTrajectory rk_default = evolve_rk4(c, tgrid);   // default step: half the bound
    out.push_back(check("dynamics.rk4_norm_drift", std::abs(rk_default.norm.back() - 1.0), 1e-8));

    const StateTrajectory rk_half = evolve_rk4(c, tgrid, 0.5 * rk4_step_bound(c));
    double diff_half = 0.0;
    for (std::size_t i = 0; i < tgrid.size(); ++i)
        diff_half = std::max(diff_half, std::abs(eig2.a[i] - rk_half.a[i]));
    // fourth-order convergence: halving dt cuts the error ~16x (allow >= 8x)
    out.push_back(check("dynamics.rk4_order", diff_half / diff, 1.0 / 8.0));

    // Markov regime |a(t)| ~ e^{-gamma t} before the revival, shrinking with
    // delta_omega when the reservoir grows as 1/dw^2.
    const double dev_coarse = [&] {
        const SystemConfig cc = config_from_rate(gamma, 0.008, full ? 251 : 201);
        const Rates rr = derive_rates(cc);
        const std::vector<double> tt = uniform_grid(0.3 * rr.T_R, 200);
        const StateTrajectory tr = evolve_eigenbasis(cc, tt);
        double d = 0.0;
        for (std::size_t i = 0; i < tt.size(); ++i)
            d = std::max(d, std::abs(std::abs(tr.a[i]) - std::exp(-gamma * tt[i])));
        return d;
    }();
    const double dev_fine = [&] {
        const SystemConfig cc = config_from_rate(gamma, 0.004, full ? 1001 : 601);
        const Rates rr = derive_rates(cc);
        const std::vector<double> tt = uniform_grid(0.3 * rr.T_R, 200);
        const StateTrajectory tr = evolve_eigenbasis(cc, tt);
        double d = 0.0;
        for (std::size_t i = 0; i < tt.size(); ++i)
            d = std::max(d, std::abs(std::abs(tr.a[i]) - std::exp(-gamma * tt[i])));
        return d;
    }();
    out.push_back(check("dynamics.markov_limit", std::max(dev_coarse, dev_fine), 5e-3));
    out.push_back(check("dynamics.markov_improves_with_dw", dev_fine / dev_coarse, 1.0));
}

// --- revivals ---------------------------------------------------------------

inline void revivals_checks(std::vector<CheckResult>& out) {
    const double gamma = 1.0;

    double worst_main = 0.0, worst_corner = 0.0;
    for (double gt : {0.1, 1.0, 5.0, 20.0}) {
        const std::vector<double> rec = revival_recurrence_row(20, gt, gamma);
        for (int n = 0; n <= 20; ++n) {
            const double d = rel_diff(revival_amplitude(n, gt, gamma), rec[static_cast<std::size_t>(n)],
                                      std::exp(-gt));
            if (n == 20 && gt == 20.0)
                worst_corner = std::max(worst_corner, d);
            else
                worst_main = std::max(worst_main, d);
        }
    }
    out.push_back(check("revivals.closed_vs_recurrence", worst_main, 1e-12));
    out.push_back(check("revivals.closed_vs_recurrence_corner", worst_corner, 1e-10));

    double worst_quad = 0.0;
    for (int n = 0; n <= 5; ++n)
        for (double gt : {0.0, 0.5, 1.0, 2.5, 5.0})
            worst_quad = std::max(worst_quad, std::abs(revival_quadrature(n, gt, gamma) -
                                                       revival_amplitude(n, gt, gamma)));
    out.push_back(check("revivals.closed_vs_quadrature", worst_quad, 1e-8));

    double worst_explicit = 0.0;
    for (double gt : {0.1, 0.5, 1.0, 3.0}) {
        const double a1 = -2.0 * gt * std::exp(-gt);
        const double a2 = 2.0 * gt * (gt - 1.0) * std::exp(-gt);
        worst_explicit = std::max(worst_explicit, rel_diff(revival_amplitude(1, gt, gamma), a1, std::exp(-gt)));
        worst_explicit = std::max(worst_explicit, rel_diff(revival_amplitude(2, gt, gamma), a2, std::exp(-gt)));
    }
    out.push_back(check("revivals.explicit_low_orders", worst_explicit, 1e-13));

    const std::vector<double> grid = uniform_grid(20.0 / gamma, 400);
    double worst_chain = 0.0;
    for (int n = 0; n <= 10; ++n)
        worst_chain = std::max(worst_chain, ep_chain_residual(n, gamma, grid));
    out.push_back(check("revivals.chain_residual_analytic", worst_chain / gamma, 1e-10));

    // finite-difference cross-check of the analytic derivative route
    double worst_fd = 0.0;
    const double h = 1e-6 / gamma;
    for (int n = 1; n <= 10; ++n)
        for (double t : {0.3, 1.7, 6.0, 15.0}) {
            const double dan = (revival_amplitude(n, t + h, gamma) - revival_amplitude(n, t - h, gamma)) / (2 * h);
            double lower = 0.0;
            for (int k = 0; k < n; ++k) lower += revival_amplitude(k, t, gamma);
            worst_fd = std::max(worst_fd, std::abs(dan + gamma * revival_amplitude(n, t, gamma) + 2 * gamma * lower));
        }
    out.push_back(check("revivals.chain_residual_fd", worst_fd / gamma, 1e-6));

    int jordan_bad = 0;
    for (int n = 0; n <= 20; ++n) {
        const JordanAnalysis ja = jordan_analysis(ep_matrix(n, 0.0035));
        if (ja.eigenvalue != -0.0035 || ja.algebraic_multiplicity != n + 1 ||
            ja.geometric_multiplicity != 1 || ja.nilpotency_index != n + 1)
            ++jordan_bad;
    }
    out.push_back(check("revivals.jordan_structure", jordan_bad, 0.0));

    double worst_rk4 = 0.0;
    const std::vector<double> tgrid = uniform_grid(10.0 / gamma, 100);
    for (int n = 0; n <= 6; ++n) {
        const auto sol = ep_chain_rk4(n, gamma, tgrid);
        for (std::size_t i = 0; i < tgrid.size(); ++i)
            for (int k = 0; k <= n; ++k)
                worst_rk4 = std::max(worst_rk4, std::abs(sol[i][static_cast<std::size_t>(k)] -
                                                         revival_amplitude(k, tgrid[i], gamma)));
    }
    out.push_back(check("revivals.chain_rk4_vs_closed", worst_rk4, 1e-9));

    double zero_dev = 0.0;
    for (int n = 1; n <= 3; ++n) zero_dev = std::max(zero_dev, std::abs(revival_amplitude(n, 0.0, gamma)));
    out.push_back(check("revivals.switch_on_continuity", zero_dev, 0.0));

    double a1max = -1.0;
    for (double t : uniform_grid(10.0, 200)) a1max = std::max(a1max, revival_amplitude(1, t, gamma));
    out.push_back(check("revivals.first_revival_sign", a1max, 0.0));
}

// --- spectra ----------------------------------------------------------------

inline void spectra_checks(std::vector<CheckResult>& out) {
    const double gamma = 1.0;
    const std::vector<double> om = symmetric_grid(20.0 * gamma, gamma / 200.0);

    double even = 0.0, s0max = 0.0, s0_dev = 0.0, cov = 0.0;
    for (int n = 0; n <= 10; ++n) {
        const SpectrumGrid s = analytic_spectrum(n, om, gamma);
        double smax = 0.0;
        for (const auto& v : s.values) smax = std::max(smax, std::abs(v.real()));
        for (std::size_t i = 0; i < om.size(); ++i) {
            const double sym = std::abs(s.values[i].real() - s.values[om.size() - 1 - i].real());
            even = std::max(even, sym / smax);
        }
        if (n == 0) {
            s0max = smax;
            for (std::size_t i = 0; i < om.size(); ++i) {
                const double lorentz = gamma / std::numbers::pi / (om[i] * om[i] + gamma * gamma);
                s0_dev = std::max(s0_dev, std::abs(s.values[i].real() - lorentz));
            }
        }
        // scale covariance against gamma' = 2
        const SpectrumGrid s2 = analytic_spectrum(n, symmetric_grid(40.0, 1.0 / 100.0), 2.0);
        for (std::size_t i = 0; i < om.size(); ++i) {
            const double lhs = s2.values[i].real();
            const double rhs = 0.5 * s.values[i].real();
            cov = std::max(cov, std::abs(lhs - rhs) / smax);
        }
    }
    out.push_back(check("spectra.evenness", even, 1e-12));
    out.push_back(check("spectra.lorentzian_s0", s0_dev / s0max, 1e-12));
    out.push_back(check("spectra.scale_covariance", cov, 1e-12));

    double norm_dev = 0.0;
    for (int n = 0; n <= 6; ++n)
        norm_dev = std::max(norm_dev, std::abs(spectrum_integral(n, 0.7) - (n == 0 ? 1.0 : 0.0)));
    out.push_back(check("spectra.normalization", norm_dev, 1e-6));

    int count_bad = 0;
    std::size_t count3 = 0, count5 = 0;
    for (int n : {3, 5}) {
        const PeakList coarse = find_peaks(analytic_spectrum(n, om, gamma), true, gamma);
        const PeakList fine =
            find_peaks(analytic_spectrum(n, symmetric_grid(20.0 * gamma, gamma / 400.0), gamma), true, gamma);
        if (coarse.peaks.size() != fine.peaks.size()) ++count_bad;
        if (n == 3) count3 = coarse.peaks.size();
        if (n == 5) count5 = coarse.peaks.size();
    }
    out.push_back(check("spectra.peak_count_stability", count_bad, 0.0));
    out.push_back(check("spectra.peak_count_growth", count5 >= count3 ? 0.0 : 1.0, 0.0));

    double prev = 1e300;
    int fwhm_bad = 0;
    for (int n = 1; n <= 6; ++n) {
        const PeakList pl = find_peaks(analytic_spectrum(n, om, gamma), true, gamma);
        double dom = 0.0, fw = 0.0;
        for (const auto& p : pl.peaks)
            if (p.height > dom) {
                dom = p.height;
                fw = p.fwhm;
            }
        if (fw >= prev) ++fwhm_bad;
        prev = fw;
    }
    out.push_back(check("spectra.fwhm_monotone_decrease", fwhm_bad, 0.0));

    const PeakList pl0 = find_peaks(analytic_spectrum(0, om, gamma), true, gamma);
    const double fwhm_expect = 2.0 * gamma * std::sqrt(std::sqrt(2.0) - 1.0);
    out.push_back(check("spectra.s0_fwhm_closed_form", std::abs(pl0.peaks[0].fwhm - fwhm_expect) / gamma, 1e-5));
}

inline std::vector<CheckResult> run_suite(bool full) {
    std::vector<CheckResult> out;
    model_checks(out);
    eigen_checks(out, full);
    dynamics_checks(out, full);
    revivals_checks(out);
    spectra_checks(out);
    return out;
}

} // namespace nmep::verify
