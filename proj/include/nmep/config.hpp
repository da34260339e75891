#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace nmep {

// Invalid physical parameters or malformed user input.
class invalid_config : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Root finder / eigensolver / quadrature oracle failures.
class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One oscillator at omega0 coupled with equal strength g to a finite
// reservoir of N+1 equidistant modes omega_j = omega0 + j*delta_omega,
// j = -N/2..N/2.  All quantities are in units of omega0 = 1.
//
// In the rotating frame (default) the carrier is removed, which is
// equivalent to omega0 = 0; every closed form in this library assumes
// that frame.
struct SystemConfig {
    double omega0 = 1.0;
    double delta_omega = 0.0;
    int n_modes = 0;            // N+1, must be odd so the reservoir is symmetric
    double coupling = 0.0;      // g
    bool rotating_frame = true;

    int bath_size() const { return n_modes - 1; }   // N, even
    double carrier() const { return rotating_frame ? 0.0 : omega0; }

    // Reservoir mode frequency omega_j in the active frame, j in [-N/2, N/2].
    double mode_frequency(int j) const { return carrier() + j * delta_omega; }

    void validate() const {
        if (!std::isfinite(delta_omega) || delta_omega <= 0.0)
            throw invalid_config("delta_omega must be positive");
        if (!std::isfinite(coupling) || coupling <= 0.0)
            throw invalid_config("coupling must be positive");
        if (n_modes < 3 || n_modes % 2 == 0)
            throw invalid_config("n_modes must be odd and >= 3 (N = n_modes-1 even), got " +
                                 std::to_string(n_modes));
        if (!std::isfinite(omega0))
            throw invalid_config("omega0 must be finite");
    }
};

// Born-Markov decay rate gamma, Lorentz linewidth Gamma of the mode-weight
// distribution, and the revival period T_R.
struct Rates {
    double gamma;   // pi g^2 / delta_omega
    double Gamma;   // sqrt(gamma^2 (1 + delta_omega/(pi gamma)))
    double T_R;     // 2 pi / delta_omega
};

inline double gamma_of(double coupling, double delta_omega) {
    return std::numbers::pi * coupling * coupling / delta_omega;
}

inline Rates derive_rates(double coupling, double delta_omega) {
    if (!(delta_omega > 0.0) || !(coupling > 0.0))
        throw invalid_config("derive_rates: coupling and delta_omega must be positive");
    const double gamma = gamma_of(coupling, delta_omega);
    const double Gamma = std::sqrt(gamma * gamma + gamma * delta_omega / std::numbers::pi);
    return {gamma, Gamma, 2.0 * std::numbers::pi / delta_omega};
}

inline Rates derive_rates(const SystemConfig& config) {
    config.validate();
    return derive_rates(config.coupling, config.delta_omega);
}

// Inverse of gamma = pi g^2 / delta_omega.
inline double coupling_for_rate(double gamma, double delta_omega) {
    if (!(gamma > 0.0) || !(delta_omega > 0.0))
        throw invalid_config("coupling_for_rate: gamma and delta_omega must be positive");
    return std::sqrt(gamma * delta_omega / std::numbers::pi);
}

// Convenience builder for configs specified by the decay rate instead of g.
inline SystemConfig config_from_rate(double gamma, double delta_omega, int n_modes,
                                     double omega0 = 1.0, bool rotating_frame = true) {
    SystemConfig c;
    c.omega0 = omega0;
    c.delta_omega = delta_omega;
    c.n_modes = n_modes;
    c.coupling = coupling_for_rate(gamma, delta_omega);
    c.rotating_frame = rotating_frame;
    c.validate();
    return c;
}

} // namespace nmep
