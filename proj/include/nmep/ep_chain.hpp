#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "nmep/config.hpp"
#include "nmep/laguerre.hpp"
#include "nmep/revivals.hpp"

namespace nmep {

// Coefficient matrix of the revival chain d/dt (a_0..a_n)^T = M (a_0..a_n)^T:
// diagonal -gamma, strict lower triangle -2 gamma.  Its single eigenvalue
// -gamma is (n+1)-fold degenerate with a one-dimensional eigenspace, i.e. an
// exceptional point of order n+1.
struct EPMatrix {
    int order = 0;        // n; dimension is n+1
    double gamma = 0.0;

    int dim() const { return order + 1; }
    double entry(int i, int j) const {
        if (i == j) return -gamma;
        return (i > j) ? -2.0 * gamma : 0.0;
    }
    std::vector<double> dense() const {
        std::vector<double> m(static_cast<std::size_t>(dim()) * dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j)
                m[static_cast<std::size_t>(i) * dim() + j] = entry(i, j);
        return m;
    }
};

inline EPMatrix ep_matrix(int n, double gamma) {
    if (n < 0) throw std::domain_error("ep_matrix: order must be >= 0");
    if (!(gamma > 0.0)) throw invalid_config("ep_matrix: gamma must be positive");
    return EPMatrix{n, gamma};
}

struct JordanAnalysis {
    double eigenvalue = 0.0;
    int algebraic_multiplicity = 0;
    int geometric_multiplicity = 0;
    int nilpotency_index = 0;
};

// Exact structural analysis of the EP matrix.  The kernel of M + gamma I is
// found by forward substitution; the nilpotency index by boolean powering of
// the nonzero pattern, which is exact because every structurally nonzero
// entry of (M + gamma I)^p has the same sign (no cancellation is possible).
inline JordanAnalysis jordan_analysis(const EPMatrix& m) {
    const int d = m.dim();
    JordanAnalysis ja;
    ja.eigenvalue = -m.gamma;
    ja.algebraic_multiplicity = d;

    // (M + gamma I) v = 0 by forward substitution.  B is strictly lower
    // triangular, so row i involves only v_0..v_{i-1}: each row pins the
    // highest not-yet-forced component with a nonzero coefficient to zero.
    std::vector<bool> forced(static_cast<std::size_t>(d), false);
    for (int i = 0; i < d; ++i) {
        for (int j = i - 1; j >= 0; --j) {
            const double bij = m.entry(i, j);   // off-diagonal of B = M + gamma I
            if (bij != 0.0 && !forced[static_cast<std::size_t>(j)]) {
                forced[static_cast<std::size_t>(j)] = true;
                break;
            }
        }
    }
    int pinned = 0;
    for (bool f : forced) pinned += f ? 1 : 0;
    ja.geometric_multiplicity = d - pinned;

    // Boolean powering of S = nonzero pattern of (M + gamma I).
    std::vector<std::uint8_t> s(static_cast<std::size_t>(d) * d, 0);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < i; ++j) s[static_cast<std::size_t>(i) * d + j] = 1;
    auto any_nonzero = [&](const std::vector<std::uint8_t>& mat) {
        for (auto x : mat)
            if (x) return true;
        return false;
    };
    std::vector<std::uint8_t> power = s;
    int p = 1;
    while (any_nonzero(power)) {
        std::vector<std::uint8_t> next(static_cast<std::size_t>(d) * d, 0);
        for (int i = 0; i < d; ++i)
            for (int kk = 0; kk < d; ++kk) {
                if (!power[static_cast<std::size_t>(i) * d + kk]) continue;
                for (int j = 0; j < d; ++j)
                    next[static_cast<std::size_t>(i) * d + j] |= s[static_cast<std::size_t>(kk) * d + j];
            }
        power.swap(next);
        ++p;
    }
    ja.nilpotency_index = (d == 1) ? 1 : p;
    return ja;
}

// Max over the grid of |da_n/dt + gamma a_n + 2 gamma sum_{k<n} a_k| with the
// analytic derivative da_n/dt = -gamma a_n + 2 gamma e^{-gamma t} dL/dx at 2
// gamma t.  Identically zero in exact arithmetic.
inline double ep_chain_residual(int n, double gamma, const std::vector<double>& times) {
    if (n < 0) throw std::domain_error("ep_chain_residual: order must be >= 0");
    if (!(gamma > 0.0)) throw invalid_config("ep_chain_residual: gamma must be positive");
    double worst = 0.0;
    for (double t : times) {
        if (t < 0.0 || gamma * t > 20.0)
            throw invalid_config("ep_chain_residual: grid must lie in [0, 20/gamma]");
        const double x = 2.0 * gamma * t;
        const double e = std::exp(-gamma * t);
        const double an = e * laguerre_gen(n, x);
        const double dan = -gamma * an + e * 2.0 * gamma * laguerre_gen_deriv(n, x);
        double lower = 0.0;
        for (int k = 0; k < n; ++k) lower += e * laguerre_gen(k, x);
        worst = std::max(worst, std::abs(dan + gamma * an + 2.0 * gamma * lower));
    }
    return worst;
}

// RK4 integration of the chain ODE from (1, 0, ..., 0); returns samples of
// all components, out[sample][k].  Used as the dynamical cross-check of the
// closed forms.
inline std::vector<std::vector<double>> ep_chain_rk4(int n, double gamma,
                                                     const std::vector<double>& times,
                                                     double dt_gamma = 1e-3) {
    if (n < 0) throw std::domain_error("ep_chain_rk4: order must be >= 0");
    if (!(gamma > 0.0)) throw invalid_config("ep_chain_rk4: gamma must be positive");
    if (times.empty() || times.front() != 0.0)
        throw invalid_config("ep_chain_rk4: grid must start at t = 0");

    const int d = n + 1;
    std::vector<double> x(static_cast<std::size_t>(d), 0.0);
    x[0] = 1.0;
    std::vector<double> k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());
    const auto deriv = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (int i = 0; i < d; ++i) {
            double s = -gamma * in[static_cast<std::size_t>(i)];
            for (int j = 0; j < i; ++j) s -= 2.0 * gamma * in[static_cast<std::size_t>(j)];
            out[static_cast<std::size_t>(i)] = s;
        }
    };

    std::vector<std::vector<double>> out(times.size());
    out[0] = x;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double span = times[i] - times[i - 1];
        const int steps = std::max(1, static_cast<int>(std::ceil(span * gamma / dt_gamma)));
        const double h = span / steps;
        for (int s = 0; s < steps; ++s) {
            deriv(x, k1);
            for (std::size_t p = 0; p < x.size(); ++p) tmp[p] = x[p] + 0.5 * h * k1[p];
            deriv(tmp, k2);
            for (std::size_t p = 0; p < x.size(); ++p) tmp[p] = x[p] + 0.5 * h * k2[p];
            deriv(tmp, k3);
            for (std::size_t p = 0; p < x.size(); ++p) tmp[p] = x[p] + h * k3[p];
            deriv(tmp, k4);
            for (std::size_t p = 0; p < x.size(); ++p)
                x[p] += (h / 6.0) * (k1[p] + 2.0 * k2[p] + 2.0 * k3[p] + k4[p]);
        }
        out[i] = x;
    }
    return out;
}

} // namespace nmep
