#pragma once

// Time-domain integration of the two-component envelope on z in [0, L].
//
// At S = pi/2 (slow light) the equation is the 1D Dirac pair
//   dE1/dt = -v0 dE1/dz - delta E2 - geff E1
//   dE2/dt = +v0 dE2/dz + delta E1 - geff E2
// integrated by Strang splitting: exact local half-step (rotation by
// delta*dt/2 times exp(-geff*dt/2)), upwind advection full step, local
// half-step. At the default CFL number 1 the upwind update degenerates to an
// exact grid shift, so the only discretisation error left is the splitting.
//
// For general S the full quasistatic form  M dE/dt + dE/dz = -(C sx + G sz) E
// with M = A sz - i B sy, A = 1/c + 1/(v0 sin^2 S), B = cos S/(v0 sin^2 S),
// C = delta/(v0 sin S), G = geff/(v0 sin^2 S)  is advanced in characteristic
// variables: M = P diag(mu, -mu) P^{-1} gives two counter-propagating waves
// at speed 1/mu = v0|sin S| (up to the 1/c correction), coupled by a constant
// 2x2 generator whose exact exponential is the local half-step.

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "medium.hpp"
#include "pauli.hpp"

namespace spinorlight {

struct Drive {
    double d_omega = 0.0;   // carrier offset of the injected probe (rad/s)
    double amp1 = 1.0;      // E1 amplitude injected at z = 0
    double amp2 = 0.0;      // E2 amplitude injected at z = L
    double ramp_time = 0.0; // smooth switch-on interval

    // C2 smoothstep: avoids ringing from the switch-on edge.
    double ramp(double t) const {
        if (t <= 0.0) return 0.0;
        if (t >= ramp_time) return 1.0;
        const double x = t / ramp_time;
        return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
    }

    cplx value1(double t) const { return amp1 * ramp(t) * std::exp(cplx(0.0, -d_omega * t)); }
    cplx value2(double t) const { return amp2 * ramp(t) * std::exp(cplx(0.0, -d_omega * t)); }
};

struct FieldGrid {
    int n_z = 0;
    double length = 0.0;
    double dt = 0.0;
    double time = 0.0;
    std::vector<cplx> e1, e2; // E~ components on z_i = i dz
    Drive drive;

    double dz() const { return length / (n_z - 1); }

    // Trapezoidal integral of |E1|^2 + |E2|^2 over the sample.
    double norm2() const {
        double acc = 0.0;
        for (int i = 0; i < n_z; ++i) {
            double cell = std::norm(e1[i]) + std::norm(e2[i]);
            if (i == 0 || i == n_z - 1) cell *= 0.5;
            acc += cell;
        }
        return acc * dz();
    }
};

inline FieldGrid make_field_grid(const MediumConfig& cfg, int n_z, double dt, const Drive& drive) {
    cfg.validate();
    if (n_z < 8) throw ConfigError("field grid needs at least 8 points");
    if (!(cfg.length > 0.0)) throw ConfigError("time-domain runs need length > 0");
    if (!(dt > 0.0)) throw ConfigError("time step must be > 0");
    FieldGrid g;
    g.n_z = n_z;
    g.length = cfg.length;
    g.dt = dt;
    g.drive = drive;
    g.e1.assign(n_z, 0.0);
    g.e2.assign(n_z, 0.0);
    return g;
}

namespace detail_td {

// In-place first-order upwind. nu = 1 is an exact shift.
inline void advect_right(std::vector<cplx>& v, double nu) {
    for (std::size_t i = v.size() - 1; i >= 1; --i) v[i] = (1.0 - nu) * v[i] + nu * v[i - 1];
}

inline void advect_left(std::vector<cplx>& v, double nu) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) v[i] = (1.0 - nu) * v[i] + nu * v[i + 1];
}

inline void check_cfl(double v_char, double dt, double dz) {
    const double nu = v_char * dt / dz;
    if (nu > 1.0 + 1e-12)
        throw CflViolation("CFL number " + std::to_string(nu) + " exceeds 1 (dt too large)");
}

// Coefficients of the general-S quasistatic form.
struct GeneralCoeffs {
    double A, B, C, G, mu, v_char;
    Mat2 P, Pinv;   // M = P diag(mu,-mu) P^{-1}, P chosen symmetric and well
                    // conditioned through S = pi/2 (where it is diagonal)
    Mat2 u_half;    // exact local half-step exp(G_loc dt/2)
};

inline GeneralCoeffs general_coeffs(const MediumConfig& cfg, double dt) {
    cfg.require_regular_phase();
    GeneralCoeffs co;
    const double s = cfg.sin_s();
    const double v0 = cfg.v0();
    co.A = 1.0 / cfg.c + 1.0 / (v0 * s * s);
    co.B = cfg.cos_s() / (v0 * s * s);
    co.C = cfg.delta / (v0 * s);
    co.G = effective_decay(cfg) / (v0 * s * s);
    co.mu = std::sqrt(co.A * co.A - co.B * co.B); // A > |B| always (the 1/c term helps)
    co.v_char = 1.0 / co.mu;

    const double p = co.A + co.mu;
    co.P = {p, co.B, co.B, p};
    const double detp = p * p - co.B * co.B;
    co.Pinv = {p / detp, -co.B / detp, -co.B / detp, p / detp};

    // Local generator in characteristic variables:
    //   G_loc = -D^{-1} P^{-1} (C sx + G sz) P,  D = diag(mu, -mu).
    const Mat2 src = co.C * Mat2::sigma_x() + co.G * Mat2::sigma_z();
    Mat2 g_loc = co.Pinv * src * co.P;
    const double im = 1.0 / co.mu;
    g_loc = {-im * g_loc.a, -im * g_loc.b, im * g_loc.c, im * g_loc.d};
    co.u_half = exp_mat2((0.5 * dt) * g_loc);
    return co;
}

} // namespace detail_td

// One Strang step of the Dirac form. Requires S = pi/2 (the slow-light
// limit already dropped the 1/c advection correction there).
inline void step_dirac(FieldGrid& g, const MediumConfig& cfg) {
    cfg.validate();
    if (std::abs(cfg.phase_s - pi / 2.0) > 1e-9)
        throw ConfigError("step_dirac requires S = pi/2; use step_general otherwise");
    const double v0 = cfg.v0();
    detail_td::check_cfl(v0, g.dt, g.dz());
    const double nu = v0 * g.dt / g.dz();

    const double th = 0.5 * cfg.delta * g.dt;
    const double cs = std::cos(th), sn = std::sin(th);
    const double decay = std::exp(-0.5 * effective_decay(cfg) * g.dt);
    auto local_half = [&]() {
        for (int i = 0; i < g.n_z; ++i) {
            const cplx a = g.e1[i], b = g.e2[i];
            g.e1[i] = decay * (cs * a - sn * b);
            g.e2[i] = decay * (sn * a + cs * b);
        }
    };

    local_half();
    detail_td::advect_right(g.e1, nu);
    detail_td::advect_left(g.e2, nu);
    local_half();

    g.time += g.dt;
    g.e1[0] = g.drive.value1(g.time);
    g.e2[g.n_z - 1] = g.drive.value2(g.time);
}

// One Strang step of the general-S form in characteristic variables.
inline void step_general(FieldGrid& g, const MediumConfig& cfg) {
    cfg.validate();
    const auto co = detail_td::general_coeffs(cfg, g.dt);
    detail_td::check_cfl(co.v_char, g.dt, g.dz());
    const double nu = co.v_char * g.dt / g.dz();

    const int n = g.n_z;
    std::vector<cplx> w1(n), w2(n);
    for (int i = 0; i < n; ++i) {
        w1[i] = co.Pinv.a * g.e1[i] + co.Pinv.b * g.e2[i];
        w2[i] = co.Pinv.c * g.e1[i] + co.Pinv.d * g.e2[i];
    }

    auto local_half = [&]() {
        for (int i = 0; i < n; ++i) {
            const cplx a = w1[i], b = w2[i];
            w1[i] = co.u_half.a * a + co.u_half.b * b;
            w2[i] = co.u_half.c * a + co.u_half.d * b;
        }
    };

    local_half();
    detail_td::advect_right(w1, nu);
    detail_td::advect_left(w2, nu);
    local_half();

    g.time += g.dt;
    // Physical boundary data lives on E; solve for the incoming characteristic
    // given the outgoing one: E1(0) = P11 w1 + P12 w2, E2(L) = P21 w1 + P22 w2.
    w1[0] = (g.drive.value1(g.time) - co.P.b * w2[0]) / co.P.a;
    w2[n - 1] = (g.drive.value2(g.time) - co.P.c * w1[n - 1]) / co.P.d;

    for (int i = 0; i < n; ++i) {
        g.e1[i] = co.P.a * w1[i] + co.P.b * w2[i];
        g.e2[i] = co.P.c * w1[i] + co.P.d * w2[i];
    }
}

struct PulseRecord {
    std::vector<double> t;
    std::vector<double> transmitted; // |E1(L, t)|^2
    std::vector<double> reflected;   // |E2(0, t)|^2
    std::vector<double> stored_norm; // integral of |E|^2 over the sample
};

struct SteadyStats {
    double r2 = 0.0, t2 = 0.0;
    double drift = 0.0; // relative drift per transit over the analysis window
    bool converged = false;
};

namespace detail_td {

// Average the final 20% of the record; the drift criterion compares the two
// halves of that window, scaled to a per-transit rate.
inline SteadyStats analyze_steady(const PulseRecord& rec, double t_max, double transit,
                                  double amp2_norm, double drift_tol) {
    SteadyStats out;
    const double t_lo = 0.8 * t_max, t_mid = 0.9 * t_max;
    double s_r[2] = {0, 0}, s_t[2] = {0, 0};
    std::size_t n[2] = {0, 0};
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
        if (rec.t[i] < t_lo) continue;
        const int half = rec.t[i] < t_mid ? 0 : 1;
        s_r[half] += rec.reflected[i];
        s_t[half] += rec.transmitted[i];
        ++n[half];
    }
    if (n[0] == 0 || n[1] == 0) return out;
    const double r_a = s_r[0] / n[0], r_b = s_r[1] / n[1];
    const double t_a = s_t[0] / n[0], t_b = s_t[1] / n[1];
    out.r2 = (s_r[0] + s_r[1]) / (n[0] + n[1]) / amp2_norm;
    out.t2 = (s_t[0] + s_t[1]) / (n[0] + n[1]) / amp2_norm;
    const double scale = std::max({std::abs(r_a + r_b), std::abs(t_a + t_b), 1e-300}) * 0.5;
    const double per_transit = transit / (0.1 * t_max); // window centres are 0.1 t_max apart
    out.drift = std::max(std::abs(r_b - r_a), std::abs(t_b - t_a)) / scale * per_transit;
    out.converged = out.drift <= drift_tol;
    return out;
}

} // namespace detail_td

enum class TdScheme { automatic, dirac, general };

struct TdSettings {
    int n_z = 1024;
    double cfl = 1.0;
    double t_max = 0.0;         // 0: auto (ramp + 10 transits)
    double ramp_transits = 5.0; // drive switch-on, in units of the transit time
    TdScheme scheme = TdScheme::automatic;
    double drift_tol = 1e-4;
    int record_every = 0;       // 0: auto (~50k samples)
};

struct SteadyResult {
    double r2 = 0.0, t2 = 0.0;
    bool converged = false;
    double drift = 0.0;
    double transit = 0.0;
    PulseRecord record;
};

// Drive the sample with a CW probe from z = 0 until the reflected and
// transmitted intensities stop drifting; returns their window averages.
// Non-convergence at t_max is reported through the flag, with data intact.
inline SteadyResult run_to_steady_state(const MediumConfig& cfg, double d_omega,
                                        const TdSettings& st = {}) {
    cfg.validate();
    if (!(cfg.length > 0.0)) throw ConfigError("run_to_steady_state needs length > 0");

    const bool use_dirac = st.scheme == TdScheme::dirac ||
                           (st.scheme == TdScheme::automatic &&
                            std::abs(cfg.phase_s - pi / 2.0) <= 1e-9);
    double v_char;
    if (use_dirac) {
        v_char = cfg.v0();
    } else {
        v_char = detail_td::general_coeffs(cfg, 1.0).v_char;
    }

    const double transit = cfg.length / v_char;
    const double t_max = st.t_max > 0.0 ? st.t_max : (st.ramp_transits + 10.0) * transit;
    if (t_max < 10.0 * transit)
        throw ConfigError("t_max shorter than 10 transit times; steady state unreachable");

    const double dz = cfg.length / (st.n_z - 1);
    const double dt = st.cfl * dz / v_char;

    Drive drive;
    drive.d_omega = d_omega;
    drive.ramp_time = st.ramp_transits * transit;
    FieldGrid g = make_field_grid(cfg, st.n_z, dt, drive);

    const long n_steps = std::lround(std::ceil(t_max / dt));
    const int rec_every =
        st.record_every > 0 ? st.record_every : int(std::max(1L, n_steps / 50000L));

    SteadyResult out;
    out.transit = transit;
    out.record.t.reserve(n_steps / rec_every + 1);
    for (long s = 0; s < n_steps; ++s) {
        if (use_dirac)
            step_dirac(g, cfg);
        else
            step_general(g, cfg);
        if (s % rec_every == 0 || s == n_steps - 1) {
            out.record.t.push_back(g.time);
            out.record.transmitted.push_back(std::norm(g.e1[g.n_z - 1]));
            out.record.reflected.push_back(std::norm(g.e2[0]));
            out.record.stored_norm.push_back(g.norm2());
        }
    }

    const double amp2 = drive.amp1 * drive.amp1;
    const SteadyStats stats =
        detail_td::analyze_steady(out.record, g.time, transit, amp2, st.drift_tol);
    out.r2 = stats.r2;
    out.t2 = stats.t2;
    out.drift = stats.drift;
    out.converged = stats.converged;
    return out;
}

} // namespace spinorlight
