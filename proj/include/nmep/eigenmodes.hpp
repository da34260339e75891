#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "nmep/config.hpp"
#include "nmep/digamma.hpp"

namespace nmep {

enum class EigenMethod { transcendental_infinite, transcendental_finite, dense_oracle };

// One eigenfrequency omega_tilde = omega0 + k*delta_omega + alpha of the
// coupled system, with the Sturm shift alpha and the squared oscillator
// component of the eigenvector.
//
// The k = 0 interval is special: the secular equation has a +-alpha_0 pair of
// roots there, so every decomposition carries two modes labelled k = 0.
struct EigenMode {
    int k = 0;
    double omega_tilde = 0.0;
    double alpha = 0.0;
    double weight = 0.0;
};

struct EigenDecomposition {
    EigenMethod method = EigenMethod::transcendental_infinite;
    std::vector<EigenMode> modes;                    // eigenfrequency ascending
    std::vector<std::vector<double>> eigenvectors;   // dense oracle only, [mode][component]

    double weight_sum() const {
        double s = 0.0;
        for (const auto& m : modes) s += m.weight;
        return s;
    }
};

namespace detail {

// Bisection to floating-point exhaustion on a bracketing sign change.
// f(lo) and f(hi) must have opposite signs.
template <typename F>
double bisect_to_ulp(F&& f, double lo, double hi, double flo) {
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;   // interval exhausted
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

// Shift equation of the infinite-reservoir limit,
//   F(alpha) = alpha - (dw/pi) * atan(gamma / (alpha + k dw)),
// principal-branch arctan.  F is strictly increasing on the Sturm interval:
// dF/dalpha = 1 + (dw/pi) gamma/((alpha+k dw)^2 + gamma^2) > 0.
inline double alpha_equation_infinite(double alpha, int k, double gamma, double delta_omega) {
    return alpha - (delta_omega / std::numbers::pi) * std::atan(gamma / (alpha + k * delta_omega));
}

// Solves F(alpha) = 0 for the shift alpha_k: in (0, dw) for k >= 0 and
// (-dw, 0) for k < 0.  Bisection on the guaranteed bracket, then Newton
// polish with the analytic derivative.
inline double solve_alpha_infinite(int k, double gamma, double delta_omega) {
    if (!(gamma > 0.0) || !(delta_omega > 0.0))
        throw invalid_config("solve_alpha_infinite: gamma and delta_omega must be positive");

    const auto F = [&](double a) { return alpha_equation_infinite(a, k, gamma, delta_omega); };

    double lo = (k >= 0) ? 0.0 : -delta_omega;
    double hi = (k >= 0) ? delta_omega : 0.0;
    // atan(gamma/0) evaluates to pi/2 through the IEEE infinity, so the
    // endpoints themselves are usable.
    const double flo = F(lo);
    const double fhi = F(hi);
    if (!(flo < 0.0) || !(fhi > 0.0)) {
        std::ostringstream msg;
        msg << "solve_alpha_infinite: root not bracketed for k=" << k
            << ": F(" << lo << ")=" << flo << ", F(" << hi << ")=" << fhi;
        throw solver_error(msg.str());
    }

    double a = detail::bisect_to_ulp(F, lo, hi, flo);
    for (int it = 0; it < 4; ++it) {
        const double x = a + k * delta_omega;
        const double deriv = 1.0 + (delta_omega / std::numbers::pi) * gamma / (x * x + gamma * gamma);
        const double next = a - F(a) / deriv;
        if (next > lo && next < hi) a = next;
    }
    if (!(std::abs(F(a)) <= 1e-14 * delta_omega)) {
        std::ostringstream msg;
        msg << "solve_alpha_infinite: residual " << std::abs(F(a)) << " exceeds 1e-14*delta_omega for k=" << k;
        throw solver_error(msg.str());
    }
    return a;
}

// Finite-reservoir secular function in shift form for k >= 0,
//
//   G(alpha) = gamma cot(pi u) + (gamma/pi)[psi(N/2+k+1+u) - psi(N/2-k+1-u)]
//              - alpha - k dw,        u = alpha/dw,
//
// which is exactly the defect of the pole-sum equation.  For the edge mode
// k = N/2 the psi(1-u) term cancels the cotangent up to rounding; the
// reflection identity psi(1-u) = psi(u) + pi cot(pi u) removes the pair
// analytically.  G is odd under (alpha, k) -> (-alpha, -k), which extends it
// to k < 0 without re-derivation.
inline double alpha_equation_finite(double alpha, int k, const SystemConfig& config) {
    const double dw = config.delta_omega;
    const double gamma = gamma_of(config.coupling, dw);
    const int half = config.bath_size() / 2;
    if (k < 0) return -alpha_equation_finite(-alpha, -k, config);

    const double u = alpha / dw;
    const double a_arg = half + k + 1 + u;
    if (k == half)
        return (gamma / std::numbers::pi) * (digamma(a_arg) - digamma(u)) - alpha - k * dw;
    const double b_arg = half - k + 1 - u;
    return gamma / std::tan(std::numbers::pi * u) +
           (gamma / std::numbers::pi) * (digamma(a_arg) - digamma(b_arg)) - alpha - k * dw;
}

// Root of the finite-N secular equation in the Sturm interval: alpha in
// (0, dw) for k >= 0, (-dw, 0) for k < 0.  Requires |k| <= N/2.
inline double solve_alpha_finite(int k, const SystemConfig& config) {
    config.validate();
    const int half = config.bath_size() / 2;
    if (k > half || k < -half)
        throw invalid_config("solve_alpha_finite: |k| must be <= N/2");
    if (k < 0) return -solve_alpha_finite(-k, config);

    const double dw = config.delta_omega;
    const double gamma = gamma_of(config.coupling, dw);
    const auto G = [&](double a) { return alpha_equation_finite(a, k, config); };

    // G -> +inf at alpha -> 0+ (leading gamma/(pi u) pole) and -inf at
    // alpha -> dw-; pull the endpoints just inside, keeping the left one
    // below the smallest root scale gamma/(pi k dw).
    const double u_lo = std::min(1e-9, 1e-3 * gamma / (std::numbers::pi * (k + 1) * dw));
    double lo = u_lo * dw;
    double hi = (1.0 - 1e-9) * dw;
    double glo = G(lo);
    double ghi = G(hi);
    for (int widen = 0; widen < 6 && !(glo > 0.0); ++widen) {
        lo *= 1e-3;
        glo = G(lo);
    }
    if (!(glo > 0.0) || !(ghi < 0.0)) {
        std::ostringstream msg;
        msg << "solve_alpha_finite: root not bracketed in the Sturm interval for k=" << k
            << ", N=" << config.bath_size() << ": G(" << lo << ")=" << glo
            << ", G(" << hi << ")=" << ghi;
        throw solver_error(msg.str());
    }

    const double a = detail::bisect_to_ulp(G, lo, hi, glo);
    if (!(std::abs(G(a)) <= 1e-12 * dw)) {
        std::ostringstream msg;
        msg << "solve_alpha_finite: residual " << std::abs(G(a))
            << " exceeds 1e-12*delta_omega for k=" << k;
        throw solver_error(msg.str());
    }
    return a;
}

// Lorentz-like oscillator weight of the infinite-reservoir limit:
//   h_ak^2 = (1/pi) gamma dw / ((alpha + k dw)^2 + Gamma^2).
// At finite N this approximates the exact normalization to O(1/N).
inline double mode_weight(double alpha, int k, const SystemConfig& config) {
    const Rates r = derive_rates(config);
    const double detuning = alpha + k * config.delta_omega;
    return (1.0 / std::numbers::pi) * r.gamma * config.delta_omega /
           (detuning * detuning + r.Gamma * r.Gamma);
}

// Exact finite-N oscillator weight from eigenvector normalization:
//   h_ak^2 = 1 / (1 + sum_j g^2/(omega_tilde - omega_j)^2).
inline double oscillator_weight_exact(double omega_tilde, const SystemConfig& config) {
    config.validate();
    const int half = config.bath_size() / 2;
    const double g2 = config.coupling * config.coupling;
    double s = 1.0;
    for (int j = -half; j <= half; ++j) {
        const double d = omega_tilde - config.mode_frequency(j);
        s += g2 / (d * d);
    }
    return 1.0 / s;
}

// The same pole sum evaluated in shift coordinates omega_tilde = omega0 +
// k dw + alpha, so the near-pole difference alpha enters exactly instead of
// through the cancellation (k dw + alpha) - k dw.  Needed when the residual
// floor of the plain form (~|d residual/d omega| * ulp(omega)) matters.
inline double eigen_residual_shifted(int k, double alpha, const SystemConfig& config) {
    config.validate();
    const int half = config.bath_size() / 2;
    const double g2 = config.coupling * config.coupling;
    double s = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double d = (k - j) * config.delta_omega + alpha;
        if (d == 0.0)
            throw std::domain_error("eigen_residual_shifted: evaluation at a reservoir frequency (pole)");
        s += g2 / d;
    }
    return k * config.delta_omega + alpha - s;
}

// Defect of the exact finite-N secular equation (pole sum):
//   omega_tilde - omega0 - sum_j g^2/(omega_tilde - omega_j).
inline double eigen_residual(double omega_tilde, const SystemConfig& config) {
    config.validate();
    const int half = config.bath_size() / 2;
    const double g2 = config.coupling * config.coupling;
    double s = 0.0;
    for (int j = -half; j <= half; ++j) {
        const double d = omega_tilde - config.mode_frequency(j);
        if (d == 0.0)
            throw std::domain_error("eigen_residual: evaluation at a reservoir frequency (pole)");
        s += g2 / d;
    }
    return omega_tilde - config.carrier() - s;
}

// Default truncation for infinite-reservoir mode sums: the neglected
// Lorentzian tail weight 2 gamma/(pi K dw) stays below 1%.
inline int default_k_max(double gamma, double delta_omega) {
    return static_cast<int>(std::ceil(200.0 * gamma / delta_omega));
}

inline int default_k_max(const SystemConfig& config) {
    return default_k_max(gamma_of(config.coupling, config.delta_omega), config.delta_omega);
}

namespace detail {

// Assembles the mode list from the k >= 0 shifts: mirrors give k < 0, and the
// k = 0 interval contributes the +-alpha_0 pair.
inline std::vector<EigenMode> mirrored_modes(const std::vector<double>& alpha_nonneg,
                                             const SystemConfig& config,
                                             bool exact_weights) {
    const double dw = config.delta_omega;
    const double w0 = config.carrier();
    std::vector<EigenMode> modes;
    modes.reserve(2 * alpha_nonneg.size());
    const int kmax = static_cast<int>(alpha_nonneg.size()) - 1;
    for (int k = -kmax; k <= kmax; ++k) {
        const double mag = alpha_nonneg[static_cast<std::size_t>(std::abs(k))];
        const double alpha = (k < 0) ? -mag : mag;
        EigenMode m;
        m.k = k;
        m.alpha = alpha;
        m.omega_tilde = w0 + k * dw + alpha;
        m.weight = exact_weights ? oscillator_weight_exact(m.omega_tilde, config)
                                 : mode_weight(alpha, k, config);
        modes.push_back(m);
        if (k == 0) {   // mirror partner -alpha_0, also labelled k = 0
            EigenMode p = m;
            p.alpha = -alpha;
            p.omega_tilde = w0 - alpha;
            p.weight = exact_weights ? oscillator_weight_exact(p.omega_tilde, config)
                                     : mode_weight(-alpha, 0, config);
            modes.insert(modes.end() - 1, p);
        }
    }
    return modes;
}

} // namespace detail

// All N+2 eigenmodes of the finite system from the transcendental equation,
// with exact normalization weights.
inline EigenDecomposition finite_decomposition(const SystemConfig& config) {
    config.validate();
    const int half = config.bath_size() / 2;
    std::vector<double> alphas(static_cast<std::size_t>(half) + 1);
    for (int k = 0; k <= half; ++k)
        alphas[static_cast<std::size_t>(k)] = solve_alpha_finite(k, config);
    EigenDecomposition d;
    d.method = EigenMethod::transcendental_finite;
    d.modes = detail::mirrored_modes(alphas, config, /*exact_weights=*/true);
    return d;
}

// Truncated infinite-reservoir decomposition: modes k = -K..K plus the k = 0
// pair, Lorentz-like weights.
inline EigenDecomposition infinite_truncated_decomposition(const SystemConfig& config, int k_max = -1) {
    config.validate();
    const double gamma = gamma_of(config.coupling, config.delta_omega);
    if (k_max < 0) k_max = default_k_max(config);
    if (k_max < 1) throw invalid_config("infinite_truncated_decomposition: k_max must be >= 1");
    std::vector<double> alphas(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k)
        alphas[static_cast<std::size_t>(k)] = solve_alpha_infinite(k, gamma, config.delta_omega);
    EigenDecomposition d;
    d.method = EigenMethod::transcendental_infinite;
    d.modes = detail::mirrored_modes(alphas, config, /*exact_weights=*/false);
    return d;
}

} // namespace nmep
