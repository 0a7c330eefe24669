#pragma once

// End-to-end physics checks with pinned tolerances. Each criterion builds its
// own configuration, measures, and reports one pass/fail verdict so the same
// list backs both the `validate` subcommand and the acceptance test binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#include "bvp.hpp"
#include "maxwell_bloch.hpp"
#include "medium.hpp"
#include "scattering.hpp"
#include "sweep.hpp"
#include "timedomain.hpp"

namespace spinorlight {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

namespace detail_val {

struct Stopwatch {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
};

template <class... Args> std::string strf(const char* fmt, Args... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, fmt, args...);
    return buf;
}

// Plain bisection; the caller guarantees a sign change on [lo, hi].
template <class F> double bisect(F f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Slow-light units: v0 = 1 with the vacuum speed c as the only free ratio.
inline MediumConfig unit_medium(double c_over_v0) {
    MediumConfig cfg;
    cfg.omega = 1.0;
    cfg.phase_s = 0.5 * pi;
    cfg.delta = 0.0;
    cfg.gamma = 0.0;
    cfg.c = c_over_v0;
    cfg.g2n = c_over_v0; // v0 = c omega^2 / g2n = 1
    cfg.length = 1.0;
    return cfg;
}

// Single-medium transfer values at unit optical depth, frozen to the digits
// of tanh(1)^2 and 1 - tanh(1)^2.
inline constexpr double r2_unit_depth = 0.58002565838597347;
inline constexpr double t2_unit_depth = 0.41997434161402653;
// log(1 + sqrt 2): where reflection and transmission balance at band center.
inline constexpr double x_balance = 0.88137358701954303;

} // namespace detail_val

// 1. Energy conservation of the lossless closed form across random parameters.
inline CriterionResult criterion_unitarity() {
    using namespace detail_val;
    Stopwatch sw;
    std::mt19937 rng(0x5eed1234u);
    std::uniform_real_distribution<double> u_s(0.35, pi - 0.35);
    std::uniform_real_distribution<double> u_delta(-2.0, 2.0);
    std::uniform_real_distribution<double> u_dw(-3.0, 3.0);
    std::uniform_real_distribution<double> u_len(0.0, 3.0);

    MediumConfig cfg = unit_medium(1e3);
    double worst = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        cfg.phase_s = u_s(rng);
        cfg.delta = u_delta(rng);
        cfg.length = u_len(rng);
        const ScatterResult s = scatter(cfg, u_dw(rng));
        worst = std::max(worst, std::abs(s.defect));
    }
    CriterionResult out;
    out.id = 1;
    out.name = "closed form unitarity";
    out.seconds = sw.seconds();
    out.pass = worst < 1e-10 && out.seconds < 1.0;
    out.detail = strf("max |R^2+T^2-1| = %.3e over %d draws (need < 1e-10 in < 1 s)", worst, n);
    return out;
}

// 2. Closed form against direct integration of the boundary value problem.
inline CriterionResult criterion_bvp_agreement() {
    using namespace detail_val;
    Stopwatch sw;
    SweepPlan plan;
    plan.cfg = unit_medium(1e4);
    plan.cfg.delta = 1.0;
    plan.cfg.phase_s = 1.1;
    plan.cfg.length = 2.0;
    plan.axis = SweepAxis::d_omega;
    plan.grid = grid_from_json(json{{"start", -3.0}, {"stop", 3.0}, {"count", 1000}}, "check");
    plan.backend = Backend::closed_form;
    plan.bvp_steps = 4096;
    plan.workers = 1;

    const ComparisonReport rep = compare_backends(plan, Backend::bvp);
    const double worst = std::max(rep.max_abs_dr2, rep.max_abs_dt2);
    CriterionResult out;
    out.id = 2;
    out.name = "closed form vs direct integration";
    out.seconds = sw.seconds();
    out.pass = rep.all_ok && rep.compared == plan.grid.size() && worst < 1e-8 &&
               out.seconds < 10.0;
    out.detail = strf("max |R^2| and |T^2| deviation = %.3e over %zu detunings, 4096 steps "
                      "(need < 1e-8 in < 10 s)",
                      worst, rep.compared);
    return out;
}

// 3. On-resonance transmission oscillates between 1 and sin^2 S exactly at the
//    quarter and half wave thicknesses.
inline CriterionResult criterion_resonant_extrema() {
    using namespace detail_val;
    Stopwatch sw;
    double worst_max = 0.0, worst_min = 0.0;
    const double dw = 1.3;
    const double phases[] = {pi / 3.0, pi / 4.0, pi / 6.0};
    const double floors[] = {0.750, 0.500, 0.250}; // sin^2 S for the three phases
    for (int ip = 0; ip < 3; ++ip) {
        MediumConfig cfg = unit_medium(1e6);
        cfg.phase_s = phases[ip];
        const double s = std::abs(std::sin(phases[ip]));
        const double t2_floor = floors[ip];
        for (int m = 0; m <= 4; ++m) {
            cfg.length = (m + 1) * pi * s / dw; // half wave: full transmission
            const ScatterResult top = scatter_zero_delta(cfg, dw);
            worst_max = std::max(worst_max, std::abs(top.t2 - 1.0));
            cfg.length = (m + 0.5) * pi * s / dw; // quarter wave: deepest dip
            const ScatterResult dip = scatter_zero_delta(cfg, dw);
            worst_min = std::max(worst_min, std::abs(dip.t2 - t2_floor));
            worst_min = std::max(worst_min, std::abs(dip.r2 - (1.0 - t2_floor)));
        }
    }
    CriterionResult out;
    out.id = 3;
    out.name = "resonant transmission extrema";
    out.seconds = sw.seconds();
    out.pass = worst_max < 1e-9 && worst_min < 1e-9;
    out.detail = strf("deviation at full-transmission points %.3e, at dips vs sin^2 S %.3e "
                      "(need < 1e-9)",
                      worst_max, worst_min);
    return out;
}

// 4. Band-center values at unit depth and the reflection/transmission balance
//    point found by root bracketing.
inline CriterionResult criterion_band_center_values() {
    using namespace detail_val;
    Stopwatch sw;
    MediumConfig cfg = unit_medium(1e6);
    cfg.delta = 1.0;
    cfg.length = 1.0;
    const ScatterResult unit = scatter_gap_center(cfg);
    const double dr = std::abs(unit.r2 - r2_unit_depth);
    const double dt = std::abs(unit.t2 - t2_unit_depth);

    auto balance = [&cfg](double len) {
        MediumConfig c2 = cfg;
        c2.length = len;
        const ScatterResult s = scatter_gap_center(c2);
        return s.t2 - s.r2;
    };
    const double x_star = bisect(balance, 0.5, 1.5);
    const double dx = std::abs(x_star - x_balance);

    CriterionResult out;
    out.id = 4;
    out.name = "band center depth one and balance point";
    out.seconds = sw.seconds();
    out.pass = dr < 1e-12 && dt < 1e-12 && dx < 1e-6;
    out.detail = strf("|R^2 - %.17g| = %.3e, |T^2 - %.17g| = %.3e (< 1e-12); "
                      "balance at x = %.9f vs %.9f (< 1e-6)",
                      r2_unit_depth, dr, t2_unit_depth, dt, x_star, x_balance);
    return out;
}

// 5. Above the gap the reflection zeros recur with the advertised period, and
//    the configured detuning matches the v0/L scale it was chosen to hit.
inline CriterionResult criterion_oscillation_period() {
    using namespace detail_val;
    Stopwatch sw;
    MediumConfig cfg;
    cfg.omega = 1e6;
    cfg.c = 3e8;
    cfg.g2n = cfg.c * cfg.omega * cfg.omega / 17.0; // v0 = 17 m/s
    cfg.phase_s = 0.25 * pi;
    cfg.delta = 5.67e4;
    cfg.gamma = 0.0;
    cfg.length = 3e-4;

    const double period_expect = 1.258e5;
    const double delta1_expect = 5.67e4;
    const double v0_over_len = cfg.v0() / cfg.length;
    const double period_formula = oscillation_period(cfg);

    // Reflection zeros: the real phase K L crosses m pi above the gap.
    auto phase_minus = [&cfg](int m) {
        return [&cfg, m](double dw) {
            return std::real(k_vector(cfg, dw).k_len) * cfg.length - m * pi;
        };
    };
    const double vs = cfg.v0() * std::abs(cfg.sin_s());
    auto upper = [&](int m) {
        return std::sqrt(cfg.delta * cfg.delta +
                         std::pow((m + 1) * pi * vs / cfg.length, 2.0));
    };
    const double dw4 = bisect(phase_minus(4), cfg.delta * (1.0 + 1e-9), upper(4));
    const double dw5 = bisect(phase_minus(5), cfg.delta * (1.0 + 1e-9), upper(5));
    const double r2_at_zero =
        std::max(scatter(cfg, dw4).r2, scatter(cfg, dw5).r2);
    const double spacing = dw5 - dw4;

    auto rel = [](double a, double b) { return std::abs(a - b) / std::abs(b); };
    CriterionResult out;
    out.id = 5;
    out.name = "reflection oscillation period above the gap";
    out.seconds = sw.seconds();
    out.pass = rel(spacing, period_expect) < 0.01 && rel(period_formula, period_expect) < 0.01 &&
               rel(cfg.delta, v0_over_len) < 0.01 && rel(cfg.delta, delta1_expect) < 0.01 &&
               r2_at_zero < 1e-10;
    out.detail = strf("zero spacing %.4e vs %.4e (< 1%%), formula %.4e; detuning %.3e vs v0/L "
                      "%.3e; |R|^2 at zeros %.1e",
                      spacing, period_expect, period_formula, cfg.delta, v0_over_len,
                      r2_at_zero);
    return out;
}

// 6. Dispersion branches: gap minimum exactly |delta| at dk = 0, asymptotic
//    slope v0 |sin S|.
inline CriterionResult criterion_dispersion_gap() {
    using namespace detail_val;
    Stopwatch sw;
    MediumConfig cfg = unit_medium(1.0);
    cfg.delta = 1.3;
    cfg.phase_s = 0.4 * pi;

    const DispersionPoint at0 = dispersion(cfg, 0.0);
    const bool min_exact =
        at0.omega_plus == std::abs(cfg.delta) && at0.omega_minus == -std::abs(cfg.delta);
    const bool is_min = dispersion(cfg, 1e-3).omega_plus > at0.omega_plus &&
                        dispersion(cfg, -1e-3).omega_plus > at0.omega_plus;

    const double vs = cfg.v0() * std::abs(cfg.sin_s());
    const double big = 1e8;
    const double slope =
        (dispersion(cfg, 2.0 * big).omega_plus - dispersion(cfg, big).omega_plus) / big;
    const double slope_err = std::abs(slope - vs) / vs;

    CriterionResult out;
    out.id = 6;
    out.name = "dispersion gap minimum and asymptotic slope";
    out.seconds = sw.seconds();
    out.pass = min_exact && is_min && slope_err < 1e-12;
    out.detail = strf("gap minimum == |delta|: %s, strict minimum: %s, slope error %.2e "
                      "(need < 1e-12)",
                      min_exact ? "yes" : "no", is_min ? "yes" : "no", slope_err);
    return out;
}

// 7. Lossy band center: exact reduction at gamma = 0, the large-depth
//    asymptote, and strict sub-unitarity whenever gamma > 0.
inline CriterionResult criterion_lossy_limits() {
    using namespace detail_val;
    Stopwatch sw;

    MediumConfig cfg = unit_medium(1e6);
    cfg.delta = 0.7;
    double reduce_err = 0.0;
    for (double x : {0.3, 1.0, 2.5}) {
        cfg.length = x / cfg.delta;
        const ScatterResult lossless = scatter_gap_center(cfg);
        const ScatterResult lossy = scatter_lossy_gap_center(cfg);
        reduce_err = std::max(reduce_err, std::abs(lossless.r2 - lossy.r2));
        reduce_err = std::max(reduce_err, std::abs(lossless.t2 - lossy.t2));
    }

    MediumConfig deep = unit_medium(1e12);
    deep.delta = 1.0;
    deep.gamma = 1.0; // effective decay = gamma delta^2 / omega^2 = 1
    const double delta_eff = std::sqrt(2.0);
    deep.length = 10.0 / delta_eff; // depth x = 10
    const ScatterResult exact = scatter_lossy_gap_center(deep);
    const ScatterResult asym = scatter_lossy_asymptotic(deep);
    const ScatterResult full = scatter(deep, 0.0);
    const double r_frozen = 0.41421356237309515; // 1/(1+sqrt 2)
    // The asymptote claims R with O(e^{-2x}) relative error; hold it to 1e-3.
    const double asym_err =
        std::max(std::abs(std::sqrt(exact.r2) - std::sqrt(asym.r2)) / std::sqrt(asym.r2),
                 std::abs(std::sqrt(exact.t2) - std::sqrt(asym.t2)) / std::sqrt(asym.t2));
    const double frozen_err = std::abs(std::sqrt(asym.r2) - r_frozen) / r_frozen;
    const double backend_err =
        std::max(std::abs(full.r2 - exact.r2), std::abs(full.t2 - exact.t2));

    double worst_sum = 0.0;
    bool positive = true;
    for (double g : {0.1, 0.5, 1.0, 2.0})
        for (double x : {0.5, 1.0, 2.0, 5.0}) {
            MediumConfig c2 = unit_medium(1e9);
            c2.delta = 1.0;
            c2.gamma = g;
            c2.length = x;
            const ScatterResult s = scatter_lossy_gap_center(c2);
            worst_sum = std::max(worst_sum, s.r2 + s.t2);
            positive = positive && s.r2 > 0.0 && s.t2 > 0.0;
        }

    CriterionResult out;
    out.id = 7;
    out.name = "lossy limits and passivity";
    out.seconds = sw.seconds();
    out.pass = reduce_err <= 1e-15 && asym_err < 1e-3 && frozen_err < 1e-3 &&
               backend_err < 1e-9 && worst_sum < 1.0 && positive;
    out.detail = strf("gamma=0 reduction %.1e (<= 1e-15); asymptote rel err %.1e, |R| vs "
                      "%.9f rel err %.1e (< 1e-3); general backend gap %.1e; max R^2+T^2 "
                      "with loss %.6f (< 1)",
                      reduce_err, asym_err, r_frozen, frozen_err, backend_err, worst_sum);
    return out;
}

// 8. Time-domain steady state of the two-component wave equations against the
//    band-center closed form at unit depth.
inline CriterionResult criterion_timedomain_steady() {
    using namespace detail_val;
    Stopwatch sw;
    MediumConfig cfg = unit_medium(100.0);
    cfg.delta = 1.0;
    cfg.length = compton_length(cfg); // depth x = 1

    TdSettings st;
    st.n_z = 2048;
    st.t_max = 25.0 * cfg.length; // transit is length / v0 = length here
    const SteadyResult s = run_to_steady_state(cfg, 0.0, st);

    const double dr = std::abs(s.r2 - r2_unit_depth);
    const double dt = std::abs(s.t2 - t2_unit_depth);
    const double flux = std::abs(s.r2 + s.t2 - 1.0);
    CriterionResult out;
    out.id = 8;
    out.name = "time domain steady state at depth one";
    out.seconds = sw.seconds();
    out.pass = s.converged && dr < 2e-3 && dt < 2e-3 && flux < 1e-4 && out.seconds < 60.0;
    out.detail = strf("R^2 err %.2e, T^2 err %.2e (< 2e-3); |R^2+T^2-1| = %.2e (< 1e-4); "
                      "drift %.1e, converged %s",
                      dr, dt, flux, s.drift, s.converged ? "yes" : "no");
    return out;
}

// 9. The effective transfer emerges from the full atom-field model as the
//    detuning drops below the control scale, improving monotonically. The
//    probe sits at half the gap (d_omega = delta/2): at band center the
//    stationary elimination of the excited level is exact, so that is where
//    the genuine reduction error, scaling as (delta/control)^2, shows itself.
//    Band-center agreement is checked as well at the 2% acceptance point.
inline CriterionResult criterion_emergence() {
    using namespace detail_val;
    Stopwatch sw;
    const double deltas[] = {0.2, 0.1, 0.05, 0.02};
    double errs[4] = {0, 0, 0, 0};
    double center_err = 1.0;
    bool all_converged = true;

    for (int i = 0; i < 4; ++i) {
        MediumConfig cfg;
        cfg.omega = 1.0;
        cfg.phase_s = 0.5 * pi;
        cfg.delta = deltas[i];
        cfg.gamma = 0.0;
        cfg.c = 1.0;
        cfg.g2n = 100.0; // v0/c = 1e-2
        cfg.length = compton_length(cfg); // depth x = 1

        MbSettings st;
        st.n_z = 256;
        st.ramp_transits = 6.0; // gentle switch-on keeps band-edge ringing down
        st.t_max = 20.0 * cfg.length / cfg.v0();

        const double dw = 0.5 * cfg.delta;
        const ScatterResult ref = scatter_variant(cfg, dw, ScatterVariant::exact);
        const MbSteadyResult s = run_mb_steady(cfg, dw, st);
        all_converged = all_converged && s.converged;
        errs[i] = std::max(std::abs(s.r2 - ref.r2) / ref.r2,
                           std::abs(s.t2 - ref.t2) / ref.t2);

        if (deltas[i] == 0.05) {
            const MbSteadyResult c = run_mb_steady(cfg, 0.0, st);
            all_converged = all_converged && c.converged;
            center_err = std::max(std::abs(c.r2 - r2_unit_depth) / r2_unit_depth,
                                  std::abs(c.t2 - t2_unit_depth) / t2_unit_depth);
        }
    }
    const bool monotone = errs[0] > errs[1] && errs[1] > errs[2] && errs[2] > errs[3];

    CriterionResult out;
    out.id = 9;
    out.name = "slow light emergence from the full model";
    out.seconds = sw.seconds();
    out.pass = all_converged && monotone && errs[2] < 0.02 && center_err < 0.02 &&
               out.seconds < 600.0;
    out.detail = strf("mid-gap relative errors %.1e, %.1e, %.1e, %.1e for detuning/control = "
                      "0.2, 0.1, 0.05, 0.02 (monotone, third < 0.02); band center at 0.05: %.1e",
                      errs[0], errs[1], errs[2], errs[3], center_err);
    return out;
}

// 10. With the two-photon detuning off, the dark state keeps the excited
//     amplitudes empty and the medium transparent.
inline CriterionResult criterion_dark_state() {
    using namespace detail_val;
    Stopwatch sw;
    MediumConfig cfg;
    cfg.omega = 1.0;
    cfg.phase_s = 0.5 * pi;
    cfg.delta = 0.0;
    cfg.gamma = 0.5;
    cfg.c = 1.0;
    cfg.g2n = 100.0;
    cfg.length = 0.2;

    MbSettings st;
    st.n_z = 256;
    const MbSteadyResult s = run_mb_steady(cfg, 0.0, st);

    CriterionResult out;
    out.id = 10;
    out.name = "dark state suppression of the excited level";
    out.seconds = sw.seconds();
    out.pass = s.converged && s.max_phie_over_sqrtn < 1e-3 && s.t2 > 0.98 &&
               !s.linearization_warn;
    out.detail = strf("max excited amplitude / sqrt(n) = %.2e (< 1e-3), T^2 = %.6f (> 0.98), "
                      "spin load %.2e",
                      s.max_phie_over_sqrtn, s.t2, s.max_phis_over_sqrtn);
    return out;
}

// 11. Sweep output is bit-identical for every worker count, including the
//     captured per-point failures.
inline CriterionResult criterion_determinism() {
    using namespace detail_val;
    Stopwatch sw;
    SweepPlan plan;
    plan.cfg = unit_medium(1e9);
    plan.cfg.delta = 1.0;
    plan.cfg.gamma = 1.0;
    plan.axis = SweepAxis::length;
    plan.variant = ScatterVariant::lossy_asymptotic; // short lengths refuse to evaluate
    const double len5 = 5.0 / std::sqrt(2.0);
    plan.grid = grid_from_json(
        json{{"start", 0.2 * len5}, {"stop", 3.0 * len5}, {"count", 101}}, "check");

    std::string csv[4];
    json failures[4];
    int used[4] = {0, 0, 0, 0};
    const int counts[3] = {1, 2, 4};
    for (int i = 0; i < 3; ++i) {
        plan.workers = counts[i];
        const SweepOutcome o = run_sweep(plan);
        csv[i] = to_csv(o.rows);
        failures[i] = make_manifest(plan, o)["failures"];
        used[i] = o.workers_used;
    }
    plan.workers = 0;
    setenv("SPINOR_LIGHT_WORKERS", "3", 1);
    const SweepOutcome env_run = run_sweep(plan);
    unsetenv("SPINOR_LIGHT_WORKERS");
    csv[3] = to_csv(env_run.rows);
    failures[3] = make_manifest(plan, env_run)["failures"];
    used[3] = env_run.workers_used;

    const bool same = csv[0] == csv[1] && csv[1] == csv[2] && csv[2] == csv[3];
    const bool same_failures =
        failures[0] == failures[1] && failures[1] == failures[2] && failures[2] == failures[3];
    const bool counted = used[0] == 1 && used[1] == 2 && used[2] == 4 && used[3] == 3;
    const std::size_t n_fail = failures[0].size();

    CriterionResult out;
    out.id = 11;
    out.name = "deterministic parallel sweeps";
    out.seconds = sw.seconds();
    out.pass = same && same_failures && counted && n_fail > 0;
    out.detail = strf("CSV identical across 1/2/4/env(3) workers: %s; failure lists identical: "
                      "%s; refused points recorded: %zu",
                      same ? "yes" : "no", same_failures ? "yes" : "no", n_fail);
    return out;
}

inline std::vector<CriterionResult> run_all_criteria() {
    using Fn = CriterionResult (*)();
    const Fn fns[] = {
        criterion_unitarity,         criterion_bvp_agreement,   criterion_resonant_extrema,
        criterion_band_center_values, criterion_oscillation_period, criterion_dispersion_gap,
        criterion_lossy_limits,      criterion_timedomain_steady, criterion_emergence,
        criterion_dark_state,        criterion_determinism,
    };
    std::vector<CriterionResult> results;
    int id = 0;
    for (Fn fn : fns) {
        ++id;
        try {
            results.push_back(fn());
        } catch (const std::exception& e) {
            CriterionResult bad;
            bad.id = id;
            bad.name = "criterion aborted";
            bad.pass = false;
            bad.detail = e.what();
            results.push_back(bad);
        }
    }
    return results;
}

inline int print_criteria(const std::vector<CriterionResult>& results, std::FILE* stream) {
    int failures = 0;
    for (const CriterionResult& r : results) {
        if (!r.pass) ++failures;
        std::fprintf(stream, "%s  %2d  %-48s  (%7.2fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                     r.name.c_str(), r.seconds, r.detail.c_str());
    }
    std::fprintf(stream, "%d/%zu criteria passed\n", int(results.size()) - failures,
                 results.size());
    return failures;
}

} // namespace spinorlight
