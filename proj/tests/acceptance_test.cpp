// Acceptance suite: each criterion below runs at its stated scale and prints
// one PASS/FAIL line (sub-items get their own lines).  Invoke with a
// criterion number 1..7, or with no argument to run everything.  The exit
// code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "nmep/dynamics.hpp"
#include "nmep/ep_chain.hpp"
#include "nmep/jacobi.hpp"
#include "nmep/quadrature.hpp"
#include "nmep/revivals.hpp"
#include "nmep/spectra.hpp"

using namespace nmep;

namespace {

int g_failures = 0;

void report(const std::string& label, bool pass, const std::string& detail) {
    std::printf("ACCEPTANCE %-4s %s  %s\n", label.c_str(), pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++g_failures;
}

double rel(double x, double y, double floor_scale) {
    return std::abs(x - y) / std::max({std::abs(x), std::abs(y), floor_scale});
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

// Strict local maxima of |a|^2 with at least 1% of the window maximum as
// prominence, so sampling ripple cannot stand in for a revival peak.
std::vector<std::size_t> prominent_maxima(const std::vector<double>& y, std::size_t lo, std::size_t hi) {
    double top = 0.0;
    for (std::size_t i = lo; i <= hi; ++i) top = std::max(top, y[i]);
    std::vector<std::size_t> out;
    for (std::size_t i = std::max<std::size_t>(lo, 1); i + 1 <= hi; ++i)
        if (y[i] > y[i - 1] && y[i] > y[i + 1] && y[i] >= 0.01 * top) out.push_back(i);
    return out;
}

// --- criterion 1: Figure-1 reproduction --------------------------------------

void criterion_1() {
    Timer timer;
    const double gamma = 0.0035, dw = 0.002;
    const Rates r = derive_rates(coupling_for_rate(gamma, dw), dw);
    const std::vector<double> grid = uniform_grid(3.0 * r.T_R, 6000);

    const SystemConfig c4 = config_from_rate(gamma, dw, 4001);
    const StateTrajectory t4 = evolve_eigenbasis(c4, grid);
    std::vector<double> a2(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) a2[i] = std::norm(t4.a[i]);

    // (a) local maxima of |a|^2 within +-0.02 T_R of T_R and 2 T_R
    bool peaks_near_multiples = true;
    std::string offsets;
    for (int n = 1; n <= 2; ++n) {
        const double target = n * r.T_R;
        std::size_t lo = 0, hi = 0, wlo = 0, whi = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (grid[i] < target - 0.5 * r.T_R) lo = i;
            if (grid[i] <= target + 0.5 * r.T_R) hi = i;
            if (grid[i] < target - 0.02 * r.T_R) wlo = i;
            if (grid[i] <= target + 0.02 * r.T_R) whi = i;
        }
        const std::vector<std::size_t> maxima = prominent_maxima(a2, lo, hi);
        bool inside = false;
        std::size_t best = lo;
        for (std::size_t m : maxima) {
            if (m >= wlo && m <= whi) inside = true;
            if (a2[m] > a2[best]) best = m;
        }
        peaks_near_multiples = peaks_near_multiples && inside;
        offsets += (n == 1 ? "offsets/T_R: " : ", ");
        offsets += std::to_string((grid[best] - target) / r.T_R);
    }
    // The revival bump of order n tops out near n T_R + O(n/gamma): at these
    // parameters (gamma T_R = 11) that is +0.091 T_R and +0.238 T_R, outside
    // the stated +-0.02 T_R window, so this sub-criterion cannot pass; see
    // the first-revival closed form -2 gamma s e^{-gamma s}.
    report("1a", peaks_near_multiples,
           "|a|^2 local maxima within +-0.02 T_R of T_R and 2T_R (dominant-peak " + offsets + ")");

    // (b) closed-form reconstruction error, decreasing in N
    const std::vector<double> closed = reconstruct(grid, c4, 3);
    double err4 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err4 = std::max(err4, std::abs(t4.a[i] - std::complex<double>{closed[i], 0.0}));

    const SystemConfig c8 = config_from_rate(gamma, dw, 8001);
    const StateTrajectory t8 = evolve_eigenbasis(c8, grid);
    double err8 = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err8 = std::max(err8, std::abs(t8.a[i] - std::complex<double>{closed[i], 0.0}));

    char buf[160];
    std::snprintf(buf, sizeof(buf), "max|a_sim-a_closed| = %.3e (N=4000) -> %.3e (N=8000), runtime %.1fs",
                  err4, err8, timer.seconds());
    report("1b", err4 <= 5e-3 && err8 < err4, buf);
}

// --- criterion 2: closed-form identity suite ----------------------------------

void criterion_2() {
    const double gamma = 1.0;
    double worst_main = 0.0, worst_corner = 0.0;
    for (double gt : {0.1, 1.0, 5.0, 20.0}) {
        const std::vector<double> rec = revival_recurrence_row(20, gt, gamma);
        for (int n = 0; n <= 20; ++n) {
            const double d = rel(revival_amplitude(n, gt, gamma), rec[static_cast<std::size_t>(n)], std::exp(-gt));
            (n == 20 && gt == 20.0 ? worst_corner : worst_main) =
                std::max(n == 20 && gt == 20.0 ? worst_corner : worst_main, d);
        }
    }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "amplitude vs recurrence: %.2e (tol 1e-12), corner %.2e (tol 1e-10)",
                  worst_main, worst_corner);
    report("2a", worst_main <= 1e-12 && worst_corner <= 1e-10, buf);

    double worst_quad = 0.0;
    for (int n = 0; n <= 5; ++n)
        for (double gt : {0.0, 1.0, 2.5, 5.0})
            worst_quad = std::max(worst_quad,
                                  std::abs(revival_quadrature(n, gt, gamma) - revival_amplitude(n, gt, gamma)));
    std::snprintf(buf, sizeof(buf), "amplitude vs quadrature: %.2e (tol 1e-8)", worst_quad);
    report("2b", worst_quad <= 1e-8, buf);

    double worst_explicit = 0.0;
    for (double gt : {0.1, 0.5, 1.5, 4.0, 10.0}) {
        const double env = std::exp(-gt);
        worst_explicit = std::max(worst_explicit, rel(revival_amplitude(1, gt, gamma), -2.0 * gt * env, env));
        worst_explicit =
            std::max(worst_explicit, rel(revival_amplitude(2, gt, gamma), 2.0 * gt * (gt - 1.0) * env, env));
    }
    std::snprintf(buf, sizeof(buf), "explicit a_1, a_2 forms: %.2e (tol 1e-13)", worst_explicit);
    report("2c", worst_explicit <= 1e-13, buf);
}

// --- criterion 3: EP structure --------------------------------------------------

void criterion_3() {
    const double gamma = 0.0035;
    bool jordan_ok = true;
    for (int n = 0; n <= 20; ++n) {
        const JordanAnalysis ja = jordan_analysis(ep_matrix(n, gamma));
        jordan_ok = jordan_ok && ja.eigenvalue == -gamma && ja.algebraic_multiplicity == n + 1 &&
                    ja.geometric_multiplicity == 1 && ja.nilpotency_index == n + 1;
    }
    report("3a", jordan_ok, "Jordan structure exact for all n <= 20 (no tolerance)");

    double worst = 0.0;
    const std::vector<double> grid = uniform_grid(10.0 / gamma, 200);
    for (int n = 0; n <= 6; ++n) {
        const auto sol = ep_chain_rk4(n, gamma, grid);
        for (std::size_t i = 0; i < grid.size(); ++i)
            for (int k = 0; k <= n; ++k)
                worst = std::max(worst, std::abs(sol[i][static_cast<std::size_t>(k)] -
                                                 revival_amplitude(k, grid[i], gamma)));
    }
    char buf[120];
    std::snprintf(buf, sizeof(buf), "chain ODE integration vs closed forms: %.2e (tol 1e-9)", worst);
    report("3b", worst <= 1e-9, buf);
}

// --- criterion 4: ODE-chain residuals -------------------------------------------

void criterion_4() {
    const double gamma = 0.0035;
    const std::vector<double> grid = uniform_grid(20.0 / gamma, 500);
    double worst_analytic = 0.0;
    for (int n = 0; n <= 10; ++n)
        worst_analytic = std::max(worst_analytic, ep_chain_residual(n, gamma, grid));

    double worst_fd = 0.0;
    const double h = 1e-6 / gamma;
    for (int n = 0; n <= 10; ++n)
        for (double t : {0.5 / gamma, 2.0 / gamma, 8.0 / gamma, 19.0 / gamma}) {
            const double dan =
                (revival_amplitude(n, t + h, gamma) - revival_amplitude(n, t - h, gamma)) / (2.0 * h);
            double lower = 0.0;
            for (int k = 0; k < n; ++k) lower += revival_amplitude(k, t, gamma);
            worst_fd = std::max(worst_fd,
                                std::abs(dan + gamma * revival_amplitude(n, t, gamma) + 2.0 * gamma * lower));
        }
    char buf[160];
    std::snprintf(buf, sizeof(buf), "analytic %.2e (tol 1e-10 gamma), finite-difference %.2e (tol 1e-6 gamma)",
                  worst_analytic / gamma, worst_fd / gamma);
    report("4", worst_analytic <= 1e-10 * gamma && worst_fd <= 1e-6 * gamma, buf);
}

// --- criterion 5: eigenproblem cross-validation ----------------------------------

void criterion_5() {
    const double gamma = 0.0035, dw = 0.002;
    const SystemConfig c = config_from_rate(gamma, dw, 201);
    const EigenDecomposition fin = finite_decomposition(c);
    const EigenDecomposition dense = diagonalize_oracle(build_matrix(c), c);

    double root_diff = 0.0, res_dense = 0.0, res_roots = 0.0;
    for (std::size_t i = 0; i < fin.modes.size(); ++i) {
        root_diff = std::max(root_diff, std::abs(fin.modes[i].omega_tilde - dense.modes[i].omega_tilde));
        res_dense = std::max(res_dense, std::abs(eigen_residual(dense.modes[i].omega_tilde, c)));
        res_roots = std::max(res_roots, std::abs(eigen_residual_shifted(fin.modes[i].k, fin.modes[i].alpha, c)));
    }
    char buf[200];
    std::snprintf(buf, sizeof(buf), "roots vs dense %.2e dw (tol 1e-10), pole residuals %.2e / %.2e (tol 1e-9)",
                  root_diff / dw, res_dense, res_roots);
    report("5a", root_diff <= 1e-10 * dw && res_dense <= 1e-9 && res_roots <= 1e-9, buf);

    const int K = default_k_max(gamma, dw);
    const double sum_k = infinite_truncated_decomposition(c, K).weight_sum();
    const double sum_2k = infinite_truncated_decomposition(c, 2 * K).weight_sum();
    std::snprintf(buf, sizeof(buf), "truncated completeness %.6f in [0.99, 1], doubling K gives %.6f", sum_k,
                  sum_2k);
    report("5b", sum_k >= 0.99 && sum_k <= 1.0 && std::abs(1.0 - sum_2k) < std::abs(1.0 - sum_k), buf);
}

// --- criterion 6: conservation and the Markov limit -------------------------------

void criterion_6() {
    const double gamma = 0.0035, dw = 0.002;
    const SystemConfig c400 = config_from_rate(gamma, dw, 401);
    const Rates r = derive_rates(c400);

    const std::vector<double> norm_grid = uniform_grid(2.0 * r.T_R, 200);
    const StateTrajectory eig = evolve_eigenbasis(c400, norm_grid, EigenbasisMode::finite, /*store_b=*/true);
    double norm_dev = 0.0;
    for (double nv : total_norm(eig)) norm_dev = std::max(norm_dev, std::abs(nv - 1.0));

    const StateTrajectory rk = evolve_rk4(c400, norm_grid);   // default step
    const double drift = std::abs(rk.norm.back() - 1.0);

    char buf[200];
    std::snprintf(buf, sizeof(buf), "eigenbasis |norm-1| %.2e (tol 1e-10), rk4 drift %.2e (tol 1e-8)", norm_dev,
                  drift);
    report("6a", norm_dev <= 1e-10 && drift <= 1e-8, buf);

    const SystemConfig c4k = config_from_rate(gamma, dw, 4001);
    const std::vector<double> mgrid = uniform_grid(0.3 * r.T_R, 600);
    const StateTrajectory traj = evolve_eigenbasis(c4k, mgrid);
    double markov = 0.0;
    for (std::size_t i = 0; i < mgrid.size(); ++i)
        markov = std::max(markov, std::abs(std::abs(traj.a[i]) - std::exp(-gamma * mgrid[i])));
    std::snprintf(buf, sizeof(buf), "| |a|-e^{-gamma t} | %.2e for t <= 0.3 T_R (tol 5e-3)", markov);
    report("6b", markov <= 5e-3, buf);
}

// --- criterion 7: spectra ----------------------------------------------------------

void criterion_7() {
    Timer timer;
    const double gamma = 0.0071, dw = 0.002;
    const std::vector<double> om = symmetric_grid(20.0 * gamma, gamma / 200.0);

    const SpectrumGrid s0 = analytic_spectrum(0, om, gamma);
    double s0_dev = 0.0;
    const double peak = 1.0 / (std::numbers::pi * gamma);
    for (std::size_t i = 0; i < om.size(); ++i) {
        const double lorentz = gamma / std::numbers::pi / (om[i] * om[i] + gamma * gamma);
        s0_dev = std::max(s0_dev, std::abs(s0.values[i].real() - lorentz));
    }
    double norm_dev = 0.0;
    for (int n = 0; n <= 6; ++n)
        norm_dev = std::max(norm_dev, std::abs(spectrum_integral(n, gamma) - (n == 0 ? 1.0 : 0.0)));
    char buf[220];
    std::snprintf(buf, sizeof(buf), "S_0 vs Lorentzian %.2e rel (tol 1e-12), integral defect %.2e (tol 1e-6)",
                  s0_dev / peak, norm_dev);
    report("7a", s0_dev / peak <= 1e-12 && norm_dev <= 1e-6, buf);

    const std::vector<double> fine = symmetric_grid(20.0 * gamma, gamma / 400.0);
    std::size_t count3 = 0, count5 = 0;
    bool stable = true;
    for (int n : {3, 5}) {
        const std::size_t coarse = find_peaks(analytic_spectrum(n, om, gamma), true, gamma).peaks.size();
        const std::size_t refined = find_peaks(analytic_spectrum(n, fine, gamma), true, gamma).peaks.size();
        stable = stable && coarse == refined;
        (n == 3 ? count3 : count5) = coarse;
    }
    std::snprintf(buf, sizeof(buf), "|S_3|^2 peaks %zu, |S_5|^2 peaks %zu, stable under grid halving: %s",
                  count3, count5, stable ? "yes" : "no");
    report("7b", stable && count5 >= count3, buf);

    double prev = 1e300;
    bool monotone = true;
    double logs_x = 0.0, logs_y = 0.0, logs_xx = 0.0, logs_xy = 0.0;
    for (int n = 1; n <= 6; ++n) {
        const PeakList pl = find_peaks(analytic_spectrum(n, om, gamma), true, gamma);
        double dom = 0.0, fw = 0.0;
        for (const auto& p : pl.peaks)
            if (p.height > dom) {
                dom = p.height;
                fw = p.fwhm;
            }
        monotone = monotone && fw < prev;
        prev = fw;
        logs_x += std::log(n);
        logs_y += std::log(fw);
        logs_xx += std::log(n) * std::log(n);
        logs_xy += std::log(n) * std::log(fw);
    }
    const double slope = (6.0 * logs_xy - logs_x * logs_y) / (6.0 * logs_xx - logs_x * logs_x);
    std::snprintf(buf, sizeof(buf), "dominant FWHM monotone decrease n=1..6: %s, fitted exponent %.3f",
                  monotone ? "yes" : "no", slope);
    report("7c", monotone, buf);

    // windowed spectra of the simulated trajectory
    const SystemConfig c = config_from_rate(gamma, dw, 4001);
    const Rates r = derive_rates(c);
    const std::vector<double> grid = uniform_grid(5.0 * r.T_R, 5 * 2000);
    const StateTrajectory traj = evolve_eigenbasis(c, grid);
    bool peaks_match = true;
    std::string detail;
    for (int n : {3, 5}) {
        const SpectrumGrid w = windowed_spectrum(traj, (n - 1) * r.T_R, n * r.T_R, om, n);
        const PeakList wp = find_peaks(w, true, gamma);
        const PeakList ap = find_peaks(analytic_spectrum(n, om, gamma), true, gamma);
        double wbest = 0.0, wpos = 0.0, abest = 0.0, apos = 0.0;
        for (const auto& p : wp.peaks)
            if (p.height > wbest) {
                wbest = p.height;
                wpos = p.omega;
            }
        for (const auto& p : ap.peaks)
            if (p.height > abest) {
                abest = p.height;
                apos = p.omega;
            }
        peaks_match = peaks_match && std::abs(wpos - apos) <= wp.grid_spacing * (1.0 + 1e-12);
        detail += (n == 3 ? "offsets [grid steps]: " : ", ");
        detail += std::to_string(std::abs(wpos - apos) / wp.grid_spacing);
    }
    char buf2[220];
    std::snprintf(buf2, sizeof(buf2), "windowed vs analytic dominant peaks n=3,5 (%s), runtime %.1fs",
                  detail.c_str(), timer.seconds());
    report("7d", peaks_match, buf2);
}

} // namespace

int main(int argc, char** argv) {
    const int which = (argc > 1) ? std::atoi(argv[1]) : 0;
    if (which == 0 || which == 1) criterion_1();
    if (which == 0 || which == 2) criterion_2();
    if (which == 0 || which == 3) criterion_3();
    if (which == 0 || which == 4) criterion_4();
    if (which == 0 || which == 5) criterion_5();
    if (which == 0 || which == 6) criterion_6();
    if (which == 0 || which == 7) criterion_7();
    if (g_failures)
        std::printf("acceptance: %d failing line(s)\n", g_failures);
    else
        std::printf("acceptance: all lines passed\n");
    return g_failures;
}
