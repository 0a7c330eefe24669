#pragma once

// Closed-form reflection/transmission of the finite sample, from the
// transfer matrix exp(i K.sigma L) with boundary spinors (1, R) -> (T, 0):
//
//   R = (Kx + i Ky) sin(KL) / (K cos(KL) - i Kz sin(KL)),
//   T =            K        / (K cos(KL) - i Kz sin(KL)).
//
// Both are even in K, so the branch of K = sqrt(Kz^2-Kx^2-Ky^2) is
// irrelevant. Deep in a band gap KL is imaginary and cos/sin overflow near
// |Im KL| ~ 710; those points are evaluated with e^{-|Im KL|}-scaled
// trigonometry instead, which reaches the same value without ever forming
// a huge intermediate.

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "errors.hpp"
#include "medium.hpp"
#include "pauli.hpp"

namespace spinorlight {

struct ScatterResult {
    cplx r{0.0, 0.0};
    cplx t{0.0, 0.0};
    double r2 = 0.0;     // |R|^2
    double t2 = 0.0;     // |T|^2
    double defect = 0.0; // 1 - |R|^2 - |T|^2; 0 without loss, > 0 with loss

    static ScatterResult from_amplitudes(cplx r, cplx t) {
        ScatterResult out;
        out.r = r;
        out.t = t;
        out.r2 = std::norm(r);
        out.t2 = std::norm(t);
        out.defect = 1.0 - out.r2 - out.t2;
        return out;
    }
};

namespace detail_scatter {

inline ScatterResult from_k(const KVector& k, double length) {
    const cplx i(0.0, 1.0);
    const cplx w = k.k_len * length;

    cplx r, t;
    if (std::abs(w.imag()) < 680.0) {
        // sin(w)/K = L*sinc(w): even in K and finite at K = 0.
        const cplx s_over_k = length * sinc(w);
        const cplx denom = std::cos(w) - i * k.kz * s_over_k;
        if (std::abs(denom) < 1e-300)
            throw DenominatorVanishes("scattering denominator below 1e-300");
        r = (k.kx + i * k.ky) * s_over_k / denom;
        t = 1.0 / denom;
    } else {
        // Scale cos(w), sin(w) by e^{-|Im w|}; the common factor cancels in R
        // and leaves T with an explicit e^{-|Im w|} that underflows gracefully.
        const double x = w.real();
        const double y = w.imag();
        const double ay = std::abs(y);
        const double sgn = y < 0.0 ? -1.0 : 1.0;
        const double e2 = std::exp(-2.0 * ay);
        const double ch = 0.5 * (1.0 + e2);        // cosh(y) e^{-|y|}
        const double sh = sgn * 0.5 * (1.0 - e2);  // sinh(y) e^{-|y|}
        const cplx cos_s(std::cos(x) * ch, -std::sin(x) * sh);
        const cplx sin_s(std::sin(x) * ch, std::cos(x) * sh);
        const cplx denom = k.k_len * cos_s - i * k.kz * sin_s;
        if (std::abs(denom) < 1e-300)
            throw DenominatorVanishes("scattering denominator below 1e-300");
        r = (k.kx + i * k.ky) * sin_s / denom;
        t = k.k_len * std::exp(-ay) / denom;
    }
    return ScatterResult::from_amplitudes(r, t);
}

} // namespace detail_scatter

// Full closed form at detuning dw from the carrier. gamma > 0 enters through
// the substituted complex frequency in the wave vector.
inline ScatterResult scatter(const MediumConfig& cfg, double d_omega) {
    return detail_scatter::from_k(lossy_k_vector(cfg, d_omega), cfg.length);
}

// Transparent medium (delta = 0): K = dw/(v0 |sin S|) and
//   R = -i cos S sin(KL) / (|sin S| cos(KL) - i sin(KL)),
//   T =      |sin S|     / (|sin S| cos(KL) - i sin(KL)).
// |T| oscillates between 1 (at KL = j pi) and |sin S|; |R| peaks at |cos S|.
inline ScatterResult scatter_zero_delta(const MediumConfig& cfg, double d_omega) {
    cfg.validate();
    cfg.require_regular_phase();
    if (cfg.delta != 0.0)
        throw NonZeroDelta("scatter_zero_delta requires delta = 0, got " + std::to_string(cfg.delta));
    const cplx i(0.0, 1.0);
    const double abss = std::abs(cfg.sin_s());
    const double kl = d_omega * cfg.length / (cfg.v0() * abss);
    const double sn = std::sin(kl);
    const double cs = std::cos(kl);
    const cplx denom = abss * cs - i * sn;
    if (std::abs(denom) < 1e-300)
        throw DenominatorVanishes("scattering denominator below 1e-300");
    return ScatterResult::from_amplitudes(-i * cfg.cos_s() * sn / denom, abss / denom);
}

// Gap centre (dw = 0): R = tanh(Kx L), T = sech(Kx L) with Kx = delta/(v0 sin S).
// R^2 + T^2 = 1 identically; the sample is a tunnel barrier of thickness L/lambda_C.
inline ScatterResult scatter_gap_center(const MediumConfig& cfg) {
    cfg.validate();
    cfg.require_regular_phase();
    const double x = cfg.delta * cfg.length / (cfg.v0() * cfg.sin_s());
    const double e = std::exp(-std::abs(x));
    const double sech = 2.0 * e / (1.0 + e * e);
    return ScatterResult::from_amplitudes(std::tanh(x), sech);
}

// Lossy gap centre at S = pi/2: with gamma_eff = gamma delta^2/Omega^2 and
// delta_eff = sqrt(delta^2 + gamma_eff^2),
//   T = delta_eff / (delta_eff cosh x + gamma_eff sinh x),
//   R =  delta sinh x / (delta_eff cosh x + gamma_eff sinh x),  x = L delta_eff/v0.
// Reduces to the lossless forms at gamma = 0; sub-unitary otherwise.
inline ScatterResult scatter_lossy_gap_center(const MediumConfig& cfg, double s_tol = 1e-12) {
    cfg.validate();
    if (std::abs(cfg.phase_s - pi / 2.0) > s_tol)
        throw PhaseSingular("lossy gap-centre closed form holds at S = pi/2 only (|S - pi/2| = " +
                            std::to_string(std::abs(cfg.phase_s - pi / 2.0)) + ")");
    const double geff = effective_decay(cfg);
    const double deff = std::hypot(cfg.delta, geff);
    if (deff == 0.0) return ScatterResult::from_amplitudes(0.0, 1.0); // no coupling, no barrier
    const double x = cfg.length * deff / cfg.v0();
    // cosh and sinh scaled by e^{-x} (x >= 0): no overflow at any thickness.
    const double e2 = std::exp(-2.0 * x);
    const double ch = 0.5 * (1.0 + e2);
    const double sh = 0.5 * (1.0 - e2);
    const double denom = deff * ch + geff * sh;
    return ScatterResult::from_amplitudes(cfg.delta * sh / denom, deff * std::exp(-x) / denom);
}

// Thick-sample asymptote of the above (valid for x = L delta_eff/v0 >~ 5):
//   T ~ 2 delta_eff/(delta_eff+gamma_eff) e^{-x},  R ~ delta/(delta_eff+gamma_eff).
// The relative error of both is O(e^{-2x}).
inline ScatterResult scatter_lossy_asymptotic(const MediumConfig& cfg) {
    cfg.validate();
    const double geff = effective_decay(cfg);
    const double deff = std::hypot(cfg.delta, geff);
    const double x = cfg.v0() > 0.0 ? cfg.length * deff / cfg.v0() : 0.0;
    if (x < 5.0)
        throw AsymptoticRegimeViolated("thick-sample asymptote needs L*delta_eff/v0 >= 5, got " +
                                       std::to_string(x));
    const double t = 2.0 * deff / (deff + geff) * std::exp(-x);
    const double r = cfg.delta / (deff + geff);
    return ScatterResult::from_amplitudes(r, t);
}

// Period (in dw) of the |T| oscillation of the transparent medium:
// pi v0 |sin S| / L.
inline double oscillation_period(const MediumConfig& cfg) {
    cfg.validate();
    cfg.require_regular_phase();
    if (cfg.length <= 0.0)
        throw ConfigError("oscillation period needs length > 0");
    return pi * cfg.v0() * std::abs(cfg.sin_s()) / cfg.length;
}

enum class SweepAxis { length, d_omega, delta, phase_s, gamma };
enum class ScatterVariant { exact, zero_delta, gap_center, lossy, lossy_asymptotic };

inline const char* to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::length: return "length";
        case SweepAxis::d_omega: return "d_omega";
        case SweepAxis::delta: return "delta";
        case SweepAxis::phase_s: return "phase_s";
        case SweepAxis::gamma: return "gamma";
    }
    return "?";
}

inline const char* to_string(ScatterVariant v) {
    switch (v) {
        case ScatterVariant::exact: return "exact";
        case ScatterVariant::zero_delta: return "zero_delta";
        case ScatterVariant::gap_center: return "gap_center";
        case ScatterVariant::lossy: return "lossy";
        case ScatterVariant::lossy_asymptotic: return "lossy_asymptotic";
    }
    return "?";
}

struct SweepRow {
    double axis = 0.0;
    double r2 = 0.0;
    double t2 = 0.0;
    double defect = 0.0;
    bool ok = true;
    std::string error; // empty when ok
};

inline void apply_axis(MediumConfig& cfg, double& d_omega, SweepAxis axis, double value) {
    switch (axis) {
        case SweepAxis::length: cfg.length = value; break;
        case SweepAxis::d_omega: d_omega = value; break;
        case SweepAxis::delta: cfg.delta = value; break;
        case SweepAxis::phase_s: cfg.phase_s = value; break;
        case SweepAxis::gamma: cfg.gamma = value; break;
    }
}

inline ScatterResult scatter_variant(const MediumConfig& cfg, double d_omega, ScatterVariant v) {
    switch (v) {
        case ScatterVariant::exact: return scatter(cfg, d_omega);
        case ScatterVariant::zero_delta: return scatter_zero_delta(cfg, d_omega);
        case ScatterVariant::gap_center: return scatter_gap_center(cfg);
        case ScatterVariant::lossy: return scatter_lossy_gap_center(cfg);
        case ScatterVariant::lossy_asymptotic: return scatter_lossy_asymptotic(cfg);
    }
    throw ConfigError("unknown scatter variant");
}

// One closed-form curve: vary `axis` over `grid`, everything else from cfg.
// A failing point throws SweepPointError with its row index attached.
inline std::vector<SweepRow> sweep(const MediumConfig& cfg, SweepAxis axis,
                                   const std::vector<double>& grid, ScatterVariant variant,
                                   double d_omega = 0.0) {
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());
    for (std::size_t idx = 0; idx < grid.size(); ++idx) {
        MediumConfig point = cfg;
        double dw = d_omega;
        apply_axis(point, dw, axis, grid[idx]);
        try {
            const ScatterResult res = scatter_variant(point, dw, variant);
            rows.push_back({grid[idx], res.r2, res.t2, res.defect, true, {}});
        } catch (const Error& e) {
            throw SweepPointError(idx, e.what());
        }
    }
    return rows;
}

} // namespace spinorlight
