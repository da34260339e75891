#pragma once

#include <stdexcept>

namespace nmep {

// Generalized Laguerre polynomial L_n^{(alpha)}(x) by the forward three-term
// recurrence
//
//   (m+1) L_{m+1} = (2m + 1 + alpha - x) L_m - (m + alpha) L_{m-1},
//   L_0 = 1,  L_1 = 1 + alpha - x.
//
// Forward recurrence is stable for the orders and arguments used here
// (n <= ~50, |x| <= ~100), which the quadrature oracle confirms.
inline double laguerre(int n, double alpha, double x) {
    if (n < 0) throw std::domain_error("laguerre: order must be >= 0");
    if (n == 0) return 1.0;
    double lm1 = 1.0;               // L_0
    double lm = 1.0 + alpha - x;    // L_1
    for (int m = 1; m < n; ++m) {
        const double next = ((2.0 * m + 1.0 + alpha - x) * lm - (m + alpha) * lm1) / (m + 1.0);
        lm1 = lm;
        lm = next;
    }
    return lm;
}

// L_n^{(-1)}(x): the polynomial appearing in the revival amplitudes.
// Seeds L_0 = 1, L_1^{(-1)}(x) = -x.
inline double laguerre_gen(int n, double x) { return laguerre(n, -1.0, x); }

// d/dx L_n^{(-1)}(x) = -L_{n-1}^{(0)}(x)  (standard contiguous relation,
// validated against central finite differences in the test suite).
inline double laguerre_gen_deriv(int n, double x) {
    if (n < 0) throw std::domain_error("laguerre_gen_deriv: order must be >= 0");
    if (n == 0) return 0.0;
    return -laguerre(n - 1, 0.0, x);
}

} // namespace nmep
