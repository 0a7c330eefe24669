#pragma once

// Independent route to R and T: integrate the monochromatic system
// dM/dz = i K.sigma M across the sample with fixed-step RK4, then impose the
// boundary spinors (1, R) at z=0 and (T, 0) at z=L on the numerical
// fundamental matrix:  R = -M21/M22,  T = M11 - M12 M21/M22.
// Used as a cross-check of the closed forms, so it shares nothing with them
// past the wave vector itself.

#include <cmath>
#include <complex>

#include "errors.hpp"
#include "medium.hpp"
#include "pauli.hpp"

namespace spinorlight {

struct BvpSolution {
    Mat2 m;                      // numerical transfer matrix over [0, L]
    cplx r{0.0, 0.0};
    cplx t{0.0, 0.0};
    int step_count = 0;
    double estimated_error = 0.0; // Richardson estimate from a half-resolution pass
    double det_drift = 0.0;       // |det(M) - 1|
};

// Fixed-step classical RK4 for M' = G M with constant G = i K.sigma.
inline Mat2 integrate_transfer(const KVector& k, double length, int steps) {
    if (steps < 16) throw ConfigError("integrate_transfer needs at least 16 steps");
    const cplx i(0.0, 1.0);
    const Mat2 g = i * pauli_combination(k);
    const double h = length / steps;
    Mat2 m = Mat2::identity();
    for (int n = 0; n < steps; ++n) {
        const Mat2 k1 = g * m;
        const Mat2 k2 = g * (m + (0.5 * h) * k1);
        const Mat2 k3 = g * (m + (0.5 * h) * k2);
        const Mat2 k4 = g * (m + h * k3);
        m = m + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return m;
}

inline BvpSolution solve_rt(const MediumConfig& cfg, double d_omega, int steps = 4096) {
    const KVector k = lossy_k_vector(cfg, d_omega);
    BvpSolution out;
    out.m = integrate_transfer(k, cfg.length, steps);
    out.step_count = steps;

    const Mat2 coarse = integrate_transfer(k, cfg.length, steps / 2);
    out.estimated_error = max_abs(out.m - coarse) / 15.0; // RK4: error ~ h^4

    if (std::abs(out.m.d) < 1e-300)
        throw SingularBoundarySystem("boundary reduction singular: |M22| below 1e-300");
    out.r = -out.m.c / out.m.d;
    out.t = out.m.a - out.m.b * out.m.c / out.m.d;
    out.det_drift = std::abs(out.m.det() - 1.0);
    return out;
}

} // namespace spinorlight
