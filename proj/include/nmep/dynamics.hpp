#pragma once

#include <cmath>
#include <complex>
#include <sstream>
#include <vector>

#include "nmep/arrowhead.hpp"
#include "nmep/config.hpp"
#include "nmep/eigenmodes.hpp"
#include "nmep/parallel.hpp"

namespace nmep {

enum class EvolveMethod { eigenbasis, rk4 };
enum class EigenbasisMode { finite, infinite_truncated };

// Oscillator trajectory from the initial condition a(0) = 1, b_j(0) = 0.
// Reservoir amplitudes are stored only on request (memory is O(samples * N));
// norm is filled whenever the full state is available.
struct StateTrajectory {
    std::vector<double> times;
    std::vector<std::complex<double>> a;
    std::vector<std::vector<std::complex<double>>> b;   // [sample][reservoir j]
    std::vector<double> norm;                           // |a|^2 + sum_j |b_j|^2
    EvolveMethod method = EvolveMethod::eigenbasis;
    double weight_sum = 1.0;            // eigenbasis: completeness of the mode set
    bool truncation_warning = false;    // weight_sum < 0.99
};

// samples+1 points 0, dt, ..., t_max.
inline std::vector<double> uniform_grid(double t_max, int samples) {
    if (!(t_max > 0.0) || samples < 1) throw invalid_config("uniform_grid: need t_max > 0 and samples >= 1");
    const double dt = t_max / samples;
    std::vector<double> t(static_cast<std::size_t>(samples) + 1);
    for (int i = 0; i <= samples; ++i) t[static_cast<std::size_t>(i)] = i * dt;
    return t;
}

namespace detail {

inline void require_grid_from_zero(const std::vector<double>& times) {
    if (times.empty() || times.front() != 0.0)
        throw invalid_config("time grid must start at t = 0 (initial condition a(0)=1)");
    if (times.size() >= 2) {
        const double dt = times[1] - times[0];
        if (!(dt > 0.0)) throw invalid_config("time grid must be increasing");
        for (std::size_t i = 1; i + 1 < times.size(); ++i)
            if (std::abs((times[i + 1] - times[i]) - dt) > 1e-9 * dt)
                throw invalid_config("time grid must be uniform");
    }
}

} // namespace detail

// Spectral propagation: a(t) = sum_k h_ak^2 e^{-i omega_k t}, exact in time up
// to eigensolver accuracy.  In finite mode the reservoir amplitudes
// b_j(t) = sum_k h_jk h_ak e^{-i omega_k t} with h_jk = g h_ak/(omega_k -
// omega_j) are available on request; the truncated infinite mode has no
// per-mode reservoir picture and rejects store_b.
inline StateTrajectory evolve_eigenbasis(const SystemConfig& config,
                                         const std::vector<double>& times,
                                         EigenbasisMode mode = EigenbasisMode::finite,
                                         bool store_b = false,
                                         int k_max = -1) {
    config.validate();
    detail::require_grid_from_zero(times);
    if (store_b && mode == EigenbasisMode::infinite_truncated)
        throw invalid_config("evolve_eigenbasis: reservoir amplitudes need the finite mode");

    const EigenDecomposition dec = (mode == EigenbasisMode::finite)
                                       ? finite_decomposition(config)
                                       : infinite_truncated_decomposition(config, k_max);
    const std::size_t n_modes = dec.modes.size();
    const std::size_t n_samples = times.size();

    StateTrajectory traj;
    traj.times = times;
    traj.method = EvolveMethod::eigenbasis;
    traj.weight_sum = dec.weight_sum();
    traj.truncation_warning = traj.weight_sum < 0.99;
    traj.a.resize(n_samples);

    // coef[k][j] = h_jk h_ak, used for b; h_ak taken positive.
    const int bath = config.bath_size();
    std::vector<std::vector<double>> coef;
    if (store_b) {
        coef.assign(n_modes, std::vector<double>(static_cast<std::size_t>(bath) + 1));
        for (std::size_t m = 0; m < n_modes; ++m) {
            const double h2 = dec.modes[m].weight;
            for (int j = -bath / 2; j <= bath / 2; ++j) {
                const double d = dec.modes[m].omega_tilde - config.mode_frequency(j);
                coef[m][static_cast<std::size_t>(j + bath / 2)] = config.coupling * h2 / d;
            }
        }
        traj.b.assign(n_samples, std::vector<std::complex<double>>(static_cast<std::size_t>(bath) + 1));
        traj.norm.resize(n_samples);
    }

    parallel_for(n_samples, [&](std::size_t i) {
        const double t = times[i];
        std::complex<double> acc{0.0, 0.0};
        std::vector<std::complex<double>> phases;
        if (store_b) phases.resize(n_modes);
        for (std::size_t m = 0; m < n_modes; ++m) {
            const std::complex<double> ph = std::polar(1.0, -dec.modes[m].omega_tilde * t);
            acc += dec.modes[m].weight * ph;
            if (store_b) phases[m] = ph;
        }
        traj.a[i] = acc;
        if (store_b) {
            double nrm = std::norm(acc);
            for (int jj = 0; jj <= bath; ++jj) {
                std::complex<double> bj{0.0, 0.0};
                for (std::size_t m = 0; m < n_modes; ++m)
                    bj += coef[m][static_cast<std::size_t>(jj)] * phases[m];
                traj.b[i][static_cast<std::size_t>(jj)] = bj;
                nrm += std::norm(bj);
            }
            traj.norm[i] = nrm;
        }
    });
    return traj;
}

// Largest step allowed by the accuracy precondition dt * omega_max <= 0.05.
inline double rk4_step_bound(const SystemConfig& config) {
    return 0.05 / build_matrix(config).spectral_bound();
}

// Classical fixed-step RK4 on the full (N+2)-dimensional linear system
// dx/dt = -i M x.  The step is shrunk to divide the sample spacing exactly,
// so every requested sample lands on an integration step.  The default step
// is half the precondition bound, which keeps the norm drift well below the
// 1e-8 contract.
inline StateTrajectory evolve_rk4(const SystemConfig& config,
                                  const std::vector<double>& times,
                                  double dt = -1.0,
                                  bool store_b = false) {
    config.validate();
    detail::require_grid_from_zero(times);
    if (times.size() < 2) throw invalid_config("evolve_rk4: need at least two samples");

    const CoupledSystemMatrix m = build_matrix(config);
    const double bound = 0.05 / m.spectral_bound();
    if (dt <= 0.0) dt = 0.5 * bound;
    if (dt > bound * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "evolve_rk4: step-size error: dt=" << dt << " exceeds the precondition bound "
            << bound << " (dt * omega_max <= 0.05)";
        throw invalid_config(msg.str());
    }

    const double spacing = times[1] - times[0];
    const int substeps = static_cast<int>(std::ceil(spacing / dt - 1e-12));
    const double h = spacing / substeps;

    const int dim = m.dimension;
    using cvec = std::vector<std::complex<double>>;
    cvec x(static_cast<std::size_t>(dim), {0.0, 0.0});
    x[0] = {1.0, 0.0};
    cvec k1(x.size()), k2(x.size()), k3(x.size()), k4(x.size()), tmp(x.size());

    const auto deriv = [&](const cvec& in, cvec& out) {
        m.apply(in.data(), out.data());
        for (auto& z : out) z *= std::complex<double>{0.0, -1.0};
    };

    StateTrajectory traj;
    traj.times = times;
    traj.method = EvolveMethod::rk4;
    traj.a.resize(times.size());
    traj.norm.resize(times.size());
    if (store_b)
        traj.b.assign(times.size(), cvec(static_cast<std::size_t>(dim) - 1));

    const auto record = [&](std::size_t i) {
        traj.a[i] = x[0];
        double nrm = 0.0;
        for (const auto& z : x) nrm += std::norm(z);
        traj.norm[i] = nrm;
        if (store_b)
            for (int j = 1; j < dim; ++j)
                traj.b[i][static_cast<std::size_t>(j - 1)] = x[static_cast<std::size_t>(j)];
    };

    record(0);
    for (std::size_t i = 1; i < times.size(); ++i) {
        for (int s = 0; s < substeps; ++s) {
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
        record(i);
    }
    return traj;
}

// Per-sample |a|^2 + sum_j |b_j|^2; requires stored reservoir amplitudes.
inline std::vector<double> total_norm(const StateTrajectory& traj) {
    if (traj.b.empty())
        throw invalid_config("total_norm: reservoir amplitudes were not stored for this trajectory");
    std::vector<double> out(traj.times.size());
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
        double s = std::norm(traj.a[i]);
        for (const auto& bj : traj.b[i]) s += std::norm(bj);
        out[i] = s;
    }
    return out;
}

} // namespace nmep
