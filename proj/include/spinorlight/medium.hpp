#pragma once

// Double-tripod medium: the control matrix, group-velocity and detuning
// operators it induces on the two-component probe, and the wave vector of
// the monochromatic reduction. All frequencies are angular (rad/s); the
// only place hbar appears is the effective mass.

#include <cmath>
#include <complex>
#include <string>

#include "errors.hpp"
#include "pauli.hpp"

namespace spinorlight {

struct MediumConfig {
    double omega = 0.0;   // control Rabi frequency Omega > 0 (rad/s)
    double phase_s = 0.0; // relative control phase S (rad)
    double delta = 0.0;   // two-photon detuning delta (rad/s); the pair is (+delta, -delta)
    double gamma = 0.0;   // excited-state decay gamma >= 0 (rad/s)
    double g2n = 0.0;     // collective coupling g^2 n > 0 (rad^2/s^2 scale)
    double c = 0.0;       // vacuum speed of light (m/s)
    double length = 0.0;  // sample length L >= 0 (m); L = 0 is the empty sample
    double s_min = 1e-3;  // guard on |sin S| below which phase-singular ops refuse to run
    double hbar = 1.0;    // only enters effective_mass

    double v0() const { return c * omega * omega / g2n; } // slow-light speed at sin S = 1
    double sin_s() const { return std::sin(phase_s); }
    double cos_s() const { return std::cos(phase_s); }

    void validate() const {
        auto fail = [](const std::string& msg) { throw ConfigError("medium config: " + msg); };
        if (!(omega > 0.0) || !std::isfinite(omega)) fail("omega must be finite and > 0");
        if (!std::isfinite(phase_s)) fail("phase_s must be finite");
        if (!std::isfinite(delta)) fail("delta must be finite");
        if (!(gamma >= 0.0) || !std::isfinite(gamma)) fail("gamma must be finite and >= 0");
        if (!(g2n > 0.0) || !std::isfinite(g2n)) fail("g2n must be finite and > 0");
        if (!(c > 0.0) || !std::isfinite(c)) fail("c must be finite and > 0");
        if (!(length >= 0.0) || !std::isfinite(length)) fail("length must be finite and >= 0");
        if (!(s_min > 0.0)) fail("s_min must be > 0");
        if (!(hbar > 0.0)) fail("hbar must be > 0");
    }

    void require_regular_phase() const {
        if (std::abs(sin_s()) < s_min)
            throw PhaseSingular("|sin S| = " + std::to_string(std::abs(sin_s())) +
                                " below guard " + std::to_string(s_min) +
                                "; control matrix is singular");
    }
};

// Control matrix Omega~ = (Omega/sqrt(2)) (I + e^{iS} sigma_x).
// det = (Omega^2/2)(1 - e^{2iS}) -> singular as sin S -> 0.
inline Mat2 rabi_matrix(const MediumConfig& cfg) {
    cfg.validate();
    const cplx phase = std::exp(cplx(0.0, cfg.phase_s));
    const double w = cfg.omega / std::sqrt(2.0);
    return {w, w * phase, w * phase, w};
}

// Inverse-group-velocity operator sigma_z v~^{-1}
//   = (1/(v0 sin^2 S)) (sigma_z - i cos S sigma_y)
//   = (g^2 n / c) sigma_z (Omega~^dag)^{-1} Omega~^{-1}.
inline Mat2 inv_group_velocity(const MediumConfig& cfg) {
    cfg.validate();
    cfg.require_regular_phase();
    const double s = cfg.sin_s();
    const double pref = 1.0 / (cfg.v0() * s * s);
    const cplx i(0.0, 1.0);
    return pref * (Mat2::sigma_z() - i * cfg.cos_s() * Mat2::sigma_y());
}

// Detuning operator D~ = Omega~ diag(delta, -delta) Omega~^{-1}
//   = (delta / sin S)(i cos S sigma_z + sigma_y).
inline Mat2 d_tilde(const MediumConfig& cfg) {
    cfg.validate();
    cfg.require_regular_phase();
    const double s = cfg.sin_s();
    const cplx i(0.0, 1.0);
    return (cfg.delta / s) * (i * cfg.cos_s() * Mat2::sigma_z() + Mat2::sigma_y());
}

// Wave-vector components of the monochromatic reduction dE/dz = i K.sigma E:
//   Kx = delta/(v0 sin S),  Ky = -dw cos S/(v0 sin^2 S),
//   Kz = dw/c + dw/(v0 sin^2 S).
// Lossless version (gamma ignored); dw is the detuning from the carrier.
inline KVector k_vector(const MediumConfig& cfg, double d_omega) {
    cfg.validate();
    cfg.require_regular_phase();
    const double s = cfg.sin_s();
    const double v0 = cfg.v0();
    const double kx = cfg.delta / (v0 * s);
    const double ky = -d_omega * cfg.cos_s() / (v0 * s * s);
    const double kz = d_omega / cfg.c + d_omega / (v0 * s * s);
    return make_k_vector(kx, ky, kz);
}

// gamma_eff = gamma delta^2 / Omega^2: the residual decay seen by the dark
// polaritons once the bright manifold is eliminated.
inline double effective_decay(const MediumConfig& cfg) {
    cfg.validate();
    return cfg.gamma * cfg.delta * cfg.delta / (cfg.omega * cfg.omega);
}

// Lossy wave vector: dw -> dw + i gamma_eff inside Ky and Kz. (Kx carries no
// dw.) With the e^{-i dw t} steady-state convention this is the substitution
// that reproduces the dissipative closed forms; it damps, never amplifies.
inline KVector lossy_k_vector(const MediumConfig& cfg, double d_omega) {
    cfg.validate();
    cfg.require_regular_phase();
    const double s = cfg.sin_s();
    const double v0 = cfg.v0();
    const cplx dw(d_omega, effective_decay(cfg));
    const cplx kx = cfg.delta / (v0 * s);
    const cplx ky = -dw * cfg.cos_s() / (v0 * s * s);
    const cplx kz = dw / cfg.c + dw / (v0 * s * s);
    return make_k_vector(kx, ky, kz);
}

struct DispersionPoint {
    double dk = 0.0;          // wave number measured from the band-gap centre (1/m)
    double omega_plus = 0.0;  // upper branch (rad/s)
    double omega_minus = 0.0; // lower branch (rad/s)
};

// Slow-light band structure dw_pm = +-sqrt(delta^2 + dk^2 v0^2 sin^2 S):
// a relativistic dispersion with gap |delta| and light cone v0 |sin S|.
inline DispersionPoint dispersion(const MediumConfig& cfg, double dk) {
    cfg.validate();
    cfg.require_regular_phase();
    DispersionPoint p;
    p.dk = dk;
    if (dk == 0.0) {
        p.omega_plus = std::abs(cfg.delta); // exact gap edge, no rounding through sqrt
    } else {
        const double kv = dk * cfg.v0() * cfg.sin_s();
        p.omega_plus = std::sqrt(cfg.delta * cfg.delta + kv * kv);
    }
    p.omega_minus = -p.omega_plus;
    return p;
}

// m = hbar delta / (v0 sin S)^2; sign follows delta.
inline double effective_mass(const MediumConfig& cfg) {
    cfg.validate();
    cfg.require_regular_phase();
    const double vs = cfg.v0() * cfg.sin_s();
    return cfg.hbar * cfg.delta / (vs * vs);
}

// Compton length v0 |sin S| / delta = hbar/(m v0 |sin S|).
inline double compton_length(const MediumConfig& cfg) {
    cfg.validate();
    cfg.require_regular_phase();
    if (cfg.delta == 0.0)
        throw ZeroDetuning("compton_length undefined at delta = 0 (massless case)");
    return cfg.v0() * std::abs(cfg.sin_s()) / cfg.delta;
}

} // namespace spinorlight
