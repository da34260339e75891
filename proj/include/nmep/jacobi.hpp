#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nmep/arrowhead.hpp"
#include "nmep/config.hpp"
#include "nmep/eigenmodes.hpp"

namespace nmep {

struct JacobiResult {
    std::vector<double> values;                 // ascending
    std::vector<std::vector<double>> vectors;   // vectors[i] pairs with values[i]
    int sweeps = 0;
};

// Cyclic Jacobi eigensolver for a dense symmetric matrix (row-major, n x n).
// Sweeps rotate away every off-diagonal pair p<q in row order until the
// off-diagonal Frobenius norm falls below 1e-14 * ||A||_F.
inline JacobiResult jacobi_eigensystem(std::vector<double> a, int n) {
    if (n < 1) throw invalid_config("jacobi_eigensystem: empty matrix");
    if (static_cast<std::size_t>(n) * n != a.size())
        throw invalid_config("jacobi_eigensystem: size mismatch");

    auto at = [&](int i, int j) -> double& { return a[static_cast<std::size_t>(i) * n + j]; };

    std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i) * n + i] = 1.0;
    auto vat = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(i) * n + j]; };

    double norm2 = 0.0;
    for (double x : a) norm2 += x * x;
    const double tol2 = 1e-28 * norm2;   // (1e-14 ||A||_F)^2

    constexpr int kMaxSweeps = 60;
    int sweep = 0;
    for (; sweep < kMaxSweeps; ++sweep) {
        double off2 = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off2 += 2.0 * at(p, q) * at(p, q);
        if (off2 <= tol2) break;

        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) continue;
                const double app = at(p, p);
                const double aqq = at(q, q);
                // Stable rotation angle: t = sgn(theta)/(|theta| + sqrt(1+theta^2))
                const double theta = 0.5 * (aqq - app) / apq;
                double t;
                if (std::abs(theta) > 1e15) {
                    t = 0.5 / theta;
                } else {
                    t = 1.0 / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                    if (theta < 0.0) t = -t;
                }
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                at(p, p) = app - t * apq;
                at(q, q) = aqq + t * apq;
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                for (int i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = at(i, p);
                    const double aiq = at(i, q);
                    at(i, p) = aip - s * (aiq + tau * aip);
                    at(i, q) = aiq + s * (aip - tau * aiq);
                    at(p, i) = at(i, p);
                    at(q, i) = at(i, q);
                }
                for (int i = 0; i < n; ++i) {
                    const double vip = vat(i, p);
                    const double viq = vat(i, q);
                    vat(i, p) = vip - s * (viq + tau * vip);
                    vat(i, q) = viq + s * (vip - tau * viq);
                }
            }
        }
    }
    if (sweep >= kMaxSweeps)
        throw solver_error("jacobi_eigensystem: no convergence within the sweep budget");

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return at(i, i) < at(j, j); });

    JacobiResult r;
    r.sweeps = sweep;
    r.values.resize(n);
    r.vectors.assign(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i) {
        r.values[i] = at(order[i], order[i]);
        for (int row = 0; row < n; ++row) r.vectors[i][row] = vat(row, order[i]);
    }
    return r;
}

// Brute-force reference decomposition of the coupled-system matrix.  Mode
// labels follow the Sturm-interval convention: sorted eigenvalue i gets
// k = i - N/2 below the center and k = i - N/2 - 1 above it, which lands the
// +-alpha_0 pair on the doubled k = 0 label.
inline EigenDecomposition diagonalize_oracle(const CoupledSystemMatrix& matrix,
                                             const SystemConfig& config) {
    if (matrix.dimension > 5000)
        throw invalid_config("diagonalize_oracle: dimension above the oracle scale (5000)");
    const int n = matrix.dimension;
    const int half = (n - 2) / 2;
    JacobiResult jr = jacobi_eigensystem(matrix.dense(), n);

    EigenDecomposition d;
    d.method = EigenMethod::dense_oracle;
    d.modes.resize(n);
    d.eigenvectors.resize(n);
    for (int i = 0; i < n; ++i) {
        EigenMode m;
        m.k = (i <= half) ? (i - half) : (i - half - 1);
        m.omega_tilde = jr.values[i];
        m.alpha = m.omega_tilde - config.carrier() - m.k * config.delta_omega;
        const double h_a = jr.vectors[i][0];
        m.weight = h_a * h_a;
        d.modes[static_cast<std::size_t>(i)] = m;
        d.eigenvectors[static_cast<std::size_t>(i)] = std::move(jr.vectors[i]);
    }
    return d;
}

} // namespace nmep
