#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "nmep/config.hpp"
#include "nmep/laguerre.hpp"

namespace nmep {

// n-th revival amplitude in closed form: a_n(t) = e^{-gamma t} L_n^{(-1)}(2 gamma t).
inline double revival_amplitude(int n, double t, double gamma) {
    if (n < 0) throw std::domain_error("revival_amplitude: order must be >= 0");
    if (t < 0.0) throw std::domain_error("revival_amplitude: requires t >= 0");
    return std::exp(-gamma * t) * laguerre_gen(n, 2.0 * gamma * t);
}

// All revival amplitudes a_0..a_nmax at one time from the recurrence
//   a_n = ((n-1)/n) a_{n-1} - (2 gamma t / n) sum_{k<n} a_k,  a_0 = e^{-gamma t}.
// Independent of the Laguerre evaluation path.
inline std::vector<double> revival_recurrence_row(int n_max, double t, double gamma) {
    if (n_max < 0) throw std::domain_error("revival_recurrence_row: order must be >= 0");
    if (t < 0.0) throw std::domain_error("revival_recurrence_row: requires t >= 0");
    std::vector<double> a(static_cast<std::size_t>(n_max) + 1);
    a[0] = std::exp(-gamma * t);
    double partial = a[0];
    for (int n = 1; n <= n_max; ++n) {
        a[static_cast<std::size_t>(n)] =
            ((n - 1.0) / n) * a[static_cast<std::size_t>(n - 1)] - (2.0 * gamma * t / n) * partial;
        partial += a[static_cast<std::size_t>(n)];
    }
    return a;
}

inline double revival_recurrence(int n, double t, double gamma) {
    return revival_recurrence_row(n, t, gamma)[static_cast<std::size_t>(n)];
}

// Oscillator amplitude as the revival sum
//   a(t) = sum_{n=0}^{n_max} theta(t - n T_R) a_n(t - n T_R),
// theta(0) = 1 so revival n switches on exactly at n T_R (continuity is
// automatic since a_n(0) = 0 for n >= 1).
inline std::vector<double> reconstruct(const std::vector<double>& times,
                                       const SystemConfig& config,
                                       int n_max) {
    config.validate();
    const Rates r = derive_rates(config);
    double t_max = 0.0;
    for (double t : times) {
        if (t < 0.0) throw invalid_config("reconstruct: times must be >= 0");
        t_max = std::max(t_max, t);
    }
    if (n_max < static_cast<int>(std::floor(t_max / r.T_R)))
        throw invalid_config("reconstruct: n_max too small for the grid (needs floor(t_max/T_R))");

    std::vector<double> out(times.size(), 0.0);
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (int n = 0; n <= n_max; ++n) {
            const double s = times[i] - n * r.T_R;
            if (s < 0.0) break;
            out[i] += revival_amplitude(n, s, r.gamma);
        }
    }
    return out;
}

} // namespace nmep
