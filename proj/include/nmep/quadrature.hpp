#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "nmep/config.hpp"

namespace nmep {

struct QuadratureRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_m with the
// Chebyshev-like initial guess.  Symmetric pairs are filled together.
inline QuadratureRule gauss_legendre(int m) {
    if (m < 1) throw std::domain_error("gauss_legendre: need at least one node");
    QuadratureRule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        r.nodes[i] = -z;
        r.nodes[m - 1 - i] = z;
        r.weights[i] = r.weights[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return r;
}

inline constexpr int kRevivalQuadratureNodes = 2000;

// Revival amplitude a_n(t) from its integral representation
//
//   a_n(t) = int_{-inf}^{inf} (gamma/pi) e^{-i w t} (w-ig)^{n-1}/(w+ig)^{n+1} dw.
//
// The integrand decays only algebraically on the real axis while oscillating,
// so the real-axis tangent substitution alone cannot converge near the
// endpoints.  The contour is instead rotated to the ray w = r e^{-i pi/4}
// (legal: the integrand is analytic between the rays and the only lower-half
// pole sits at -i gamma, off the path), where the oscillation acquires the
// matching damping e^{-r t/sqrt(2)}.  The tangent substitution r = gamma
// tan(phi) then maps the ray to phi in [0, pi/2] with a smooth integrand, and
// a fixed 2000-node Gauss-Legendre rule resolves it far below the 1e-8
// envelope target.
//
// Envelope: n <= 5, 0 <= gamma t <= 5.
inline double revival_quadrature(int n, double t, double gamma) {
    if (n < 0) throw std::domain_error("revival_quadrature: order must be >= 0");
    if (!(gamma > 0.0)) throw std::domain_error("revival_quadrature: gamma must be positive");
    if (t < 0.0) throw std::domain_error("revival_quadrature: requires t >= 0");
    if (n > 5 || gamma * t > 5.0)
        throw std::domain_error("revival_quadrature: outside the oracle envelope (n <= 5, gamma*t <= 5)");

    static const QuadratureRule rule = gauss_legendre(kRevivalQuadratureNodes);

    const std::complex<double> rot = std::polar(1.0, -std::numbers::pi / 4.0);
    const std::complex<double> ig{0.0, gamma};
    double sum = 0.0;
    for (int i = 0; i < kRevivalQuadratureNodes; ++i) {
        const double phi = 0.25 * std::numbers::pi * (rule.nodes[i] + 1.0);
        const double c = std::cos(phi);
        const double radius = gamma * std::sin(phi) / c;       // gamma tan(phi)
        const std::complex<double> w = radius * rot;
        std::complex<double> ratio{1.0, 0.0};                  // ((w-ig)/(w+ig))^n
        const std::complex<double> q = (w - ig) / (w + ig);
        for (int p = 0; p < n; ++p) ratio *= q;
        const std::complex<double> kernel =
            (gamma / std::numbers::pi) * ratio / ((w + ig) * (w - ig));
        const std::complex<double> integrand =
            rot * kernel * std::exp(std::complex<double>{0.0, -1.0} * w * t) * (gamma / (c * c));
        sum += rule.weights[i] * integrand.real();
    }
    return 2.0 * 0.25 * std::numbers::pi * sum;
}

} // namespace nmep
