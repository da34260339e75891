#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "nmep/config.hpp"

namespace nmep {

// Coefficient matrix of the coupled oscillator-reservoir equations of motion:
// real symmetric arrowhead, diagonal (omega0, omega_{-N/2}, ..., omega_{N/2}),
// coupling g in the first row/column, zero elsewhere off-diagonal.
//
// Stored structurally; a dense copy is materialized only for the dense
// eigensolver oracle.
struct CoupledSystemMatrix {
    int dimension = 0;              // N + 2
    std::vector<double> diagonal;   // size dimension, entry 0 is the oscillator
    double border = 0.0;            // g

    // y = M x (complex vectors of length dimension), O(dimension).
    void apply(const std::complex<double>* x, std::complex<double>* y) const {
        std::complex<double> acc{0.0, 0.0};
        for (int j = 1; j < dimension; ++j) acc += x[j];
        y[0] = diagonal[0] * x[0] + border * acc;
        for (int j = 1; j < dimension; ++j)
            y[j] = border * x[0] + diagonal[j] * x[j];
    }

    // Row-major dense copy.
    std::vector<double> dense() const {
        std::vector<double> m(static_cast<std::size_t>(dimension) * dimension, 0.0);
        for (int i = 0; i < dimension; ++i) m[static_cast<std::size_t>(i) * dimension + i] = diagonal[i];
        for (int j = 1; j < dimension; ++j) {
            m[static_cast<std::size_t>(j)] = border;
            m[static_cast<std::size_t>(j) * dimension] = border;
        }
        return m;
    }

    // Upper bound on the spectral radius: max|diag| + g*sqrt(N+1)
    // (the border block has column 2-norm g*sqrt(N+1)).
    double spectral_bound() const {
        double dmax = 0.0;
        for (double d : diagonal) dmax = std::max(dmax, std::abs(d));
        return dmax + border * std::sqrt(static_cast<double>(dimension - 1));
    }
};

inline CoupledSystemMatrix build_matrix(const SystemConfig& config) {
    config.validate();
    const int n = config.bath_size();
    CoupledSystemMatrix m;
    m.dimension = n + 2;
    m.border = config.coupling;
    m.diagonal.resize(m.dimension);
    m.diagonal[0] = config.carrier();
    for (int j = -n / 2; j <= n / 2; ++j)
        m.diagonal[j + n / 2 + 1] = config.mode_frequency(j);
    return m;
}

} // namespace nmep
