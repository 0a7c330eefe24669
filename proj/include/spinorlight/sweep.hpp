#pragma once

// Parameter sweeps over any scattering backend, with a small worker pool.
// Each grid point writes only its own preallocated slot, so the output is
// bit-identical for every worker count. Failed points become NaN rows and are
// listed in the run manifest instead of aborting the whole sweep.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "bvp.hpp"
#include "config_io.hpp"
#include "maxwell_bloch.hpp"
#include "scattering.hpp"
#include "timedomain.hpp"
#include "version.hpp"

namespace spinorlight {

enum class Backend { closed_form, bvp, timedomain, maxwell_bloch };

inline const char* to_string(Backend b) {
    switch (b) {
        case Backend::closed_form: return "closed_form";
        case Backend::bvp: return "bvp";
        case Backend::timedomain: return "timedomain";
        case Backend::maxwell_bloch: return "maxwell_bloch";
    }
    return "closed_form";
}

inline Backend backend_from_string(const std::string& s) {
    if (s == "closed_form") return Backend::closed_form;
    if (s == "bvp") return Backend::bvp;
    if (s == "timedomain") return Backend::timedomain;
    if (s == "maxwell_bloch") return Backend::maxwell_bloch;
    throw ConfigError("unknown backend \"" + s + "\"");
}

inline SweepAxis axis_from_string(const std::string& s) {
    if (s == "length") return SweepAxis::length;
    if (s == "d_omega") return SweepAxis::d_omega;
    if (s == "delta") return SweepAxis::delta;
    if (s == "phase_s") return SweepAxis::phase_s;
    if (s == "gamma") return SweepAxis::gamma;
    throw ConfigError("unknown sweep axis \"" + s + "\"");
}

inline ScatterVariant variant_from_string(const std::string& s) {
    if (s == "exact") return ScatterVariant::exact;
    if (s == "zero_delta") return ScatterVariant::zero_delta;
    if (s == "gap_center") return ScatterVariant::gap_center;
    if (s == "lossy") return ScatterVariant::lossy;
    if (s == "lossy_asymptotic") return ScatterVariant::lossy_asymptotic;
    throw ConfigError("unknown scatter variant \"" + s + "\"");
}

struct SweepPlan {
    MediumConfig cfg;
    SweepAxis axis = SweepAxis::d_omega;
    std::vector<double> grid;
    ScatterVariant variant = ScatterVariant::exact; // closed_form backend only
    double d_omega = 0.0;                           // held fixed unless axis == d_omega
    Backend backend = Backend::closed_form;
    int bvp_steps = 4096;
    TdSettings td;
    MbSettings mb;
    int workers = 0; // 0: SPINOR_LIGHT_WORKERS, then hardware concurrency
};

struct SweepOutcome {
    std::vector<SweepRow> rows;
    int workers_used = 1;
    double wall_seconds = 0.0;
    std::size_t failures = 0;
};

inline int resolve_workers(int requested, std::size_t n_points) {
    long w = requested;
    if (w <= 0) {
        if (const char* env = std::getenv("SPINOR_LIGHT_WORKERS"); env && *env) {
            char* end = nullptr;
            w = std::strtol(env, &end, 10);
            if (end == env || *end != '\0' || w <= 0)
                throw ConfigError("SPINOR_LIGHT_WORKERS must be a positive integer");
        }
    }
    if (w <= 0) w = long(std::thread::hardware_concurrency());
    if (w <= 0) w = 1;
    if (n_points > 0 && w > long(n_points)) w = long(n_points);
    return int(w);
}

inline SweepRow sweep_point(const SweepPlan& plan, double value) {
    MediumConfig cfg = plan.cfg;
    double dw = plan.d_omega;
    apply_axis(cfg, dw, plan.axis, value);

    SweepRow row;
    row.axis = value;
    switch (plan.backend) {
        case Backend::closed_form: {
            const ScatterResult s = scatter_variant(cfg, dw, plan.variant);
            row.r2 = s.r2;
            row.t2 = s.t2;
            row.defect = s.defect;
            break;
        }
        case Backend::bvp: {
            const BvpSolution s = solve_rt(cfg, dw, plan.bvp_steps);
            row.r2 = std::norm(s.r);
            row.t2 = std::norm(s.t);
            row.defect = 1.0 - row.r2 - row.t2;
            break;
        }
        case Backend::timedomain: {
            const SteadyResult s = run_to_steady_state(cfg, dw, plan.td);
            if (!s.converged)
                throw Error("steady state not reached, drift " + std::to_string(s.drift));
            row.r2 = s.r2;
            row.t2 = s.t2;
            row.defect = 1.0 - row.r2 - row.t2;
            break;
        }
        case Backend::maxwell_bloch: {
            const MbSteadyResult s = run_mb_steady(cfg, dw, plan.mb);
            if (!s.converged)
                throw Error("steady state not reached, drift " + std::to_string(s.drift));
            row.r2 = s.r2;
            row.t2 = s.t2;
            row.defect = 1.0 - row.r2 - row.t2;
            break;
        }
    }
    row.ok = true;
    return row;
}

inline SweepOutcome run_sweep(const SweepPlan& plan) {
    plan.cfg.validate();
    const std::size_t n = plan.grid.size();
    if (n == 0) throw ConfigError("sweep grid is empty");

    SweepOutcome out;
    out.rows.assign(n, SweepRow{});
    out.workers_used = resolve_workers(plan.workers, n);

    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::size_t> next{0};
    auto body = [&plan, &next, &out, n]() {
        constexpr double bad = std::numeric_limits<double>::quiet_NaN();
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            SweepRow row;
            row.axis = plan.grid[i];
            try {
                row = sweep_point(plan, plan.grid[i]);
            } catch (const std::exception& e) {
                row.ok = false;
                row.error = e.what();
                row.r2 = row.t2 = row.defect = bad;
            }
            out.rows[i] = row;
        }
    };

    if (out.workers_used <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(out.workers_used - 1);
        for (int w = 1; w < out.workers_used; ++w) pool.emplace_back(body);
        body();
        for (std::thread& t : pool) t.join();
    }

    out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const SweepRow& r : out.rows)
        if (!r.ok) ++out.failures;
    return out;
}

inline std::string csv_row(const SweepRow& r) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", r.axis, r.r2, r.t2, r.defect);
    return buf;
}

inline std::string to_csv(const std::vector<SweepRow>& rows) {
    std::string s = "axis,r2,t2,defect\n";
    for (const SweepRow& r : rows) s += csv_row(r);
    return s;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot open for writing: " + path);
    f << content;
    f.flush();
    if (!f) throw ConfigError("write failed: " + path);
}

// Grid forms: explicit array, or {start, stop, count, spacing}.
inline std::vector<double> grid_from_json(const json& j, const char* where) {
    std::vector<double> grid;
    if (j.is_array()) {
        for (const auto& v : j) {
            if (!v.is_number()) throw ConfigError(std::string(where) + ": grid values must be numbers");
            grid.push_back(v.get<double>());
        }
        if (grid.empty()) throw ConfigError(std::string(where) + ": grid array is empty");
        return grid;
    }
    detail_io::check_keys(j, {"start", "stop", "count", "spacing"}, where);
    for (const char* req : {"start", "stop", "count"})
        if (!j.contains(req))
            throw ConfigError(std::string(where) + ": grid needs start, stop and count");
    const double start = parse_number(j.at("start"), "grid.start");
    const double stop = parse_number(j.at("stop"), "grid.stop");
    const long count = j.at("count").get<long>();
    if (count < 1) throw ConfigError(std::string(where) + ": grid count must be at least 1");
    std::string spacing = "linear";
    if (j.contains("spacing")) spacing = j.at("spacing").get<std::string>();
    grid.reserve(count);
    if (spacing == "linear") {
        for (long i = 0; i < count; ++i)
            grid.push_back(count == 1 ? start
                                      : start + (stop - start) * double(i) / double(count - 1));
    } else if (spacing == "log") {
        if (!(start > 0.0) || !(stop > 0.0))
            throw ConfigError(std::string(where) + ": log spacing needs positive start and stop");
        const double la = std::log(start), lb = std::log(stop);
        for (long i = 0; i < count; ++i)
            grid.push_back(count == 1 ? start
                                      : std::exp(la + (lb - la) * double(i) / double(count - 1)));
    } else {
        throw ConfigError(std::string(where) + ": spacing must be \"linear\" or \"log\"");
    }
    return grid;
}

inline json grid_to_json(const std::vector<double>& grid) { return json(grid); }

inline json plan_to_json(const SweepPlan& p) {
    json j;
    j["medium"] = medium_to_json(p.cfg);
    j["axis"] = to_string(p.axis);
    j["grid"] = grid_to_json(p.grid);
    j["variant"] = to_string(p.variant);
    j["d_omega"] = p.d_omega;
    j["backend"] = to_string(p.backend);
    j["bvp_steps"] = p.bvp_steps;
    j["timedomain"] = td_settings_to_json(p.td);
    j["mb"] = mb_settings_to_json(p.mb);
    j["workers"] = p.workers;
    return j;
}

inline SweepPlan plan_from_json(const json& j) {
    detail_io::check_keys(j,
                          {"medium", "axis", "grid", "variant", "d_omega", "backend",
                           "bvp_steps", "timedomain", "mb", "workers"},
                          "plan");
    for (const char* req : {"medium", "axis", "grid"})
        if (!j.contains(req))
            throw ConfigError(std::string("plan: missing required key \"") + req + "\"");
    SweepPlan p;
    p.cfg = medium_from_json(j.at("medium"));
    p.axis = axis_from_string(j.at("axis").get<std::string>());
    p.grid = grid_from_json(j.at("grid"), "plan.grid");
    if (j.contains("variant")) p.variant = variant_from_string(j.at("variant").get<std::string>());
    if (j.contains("d_omega")) p.d_omega = parse_frequency(j.at("d_omega"), "plan.d_omega");
    if (j.contains("backend")) p.backend = backend_from_string(j.at("backend").get<std::string>());
    if (j.contains("bvp_steps")) p.bvp_steps = j.at("bvp_steps").get<int>();
    if (j.contains("timedomain")) p.td = td_settings_from_json(j.at("timedomain"));
    if (j.contains("mb")) p.mb = mb_settings_from_json(j.at("mb"));
    if (j.contains("workers")) p.workers = j.at("workers").get<int>();
    return p;
}

inline json make_manifest(const SweepPlan& plan, const SweepOutcome& out) {
    json j;
    j["tool"] = "spinorlight";
    j["version"] = version_string;
    j["plan"] = plan_to_json(plan);
    j["points"] = out.rows.size();
    j["workers_used"] = out.workers_used;
    j["wall_seconds"] = out.wall_seconds;
    j["csv_header"] = "axis,r2,t2,defect";
    json failures = json::array();
    for (std::size_t i = 0; i < out.rows.size(); ++i)
        if (!out.rows[i].ok) failures.push_back({{"index", i}, {"error", out.rows[i].error}});
    j["failures"] = failures;
    return j;
}

inline SweepPlan plan_from_manifest(const json& manifest) {
    if (!manifest.contains("plan")) throw ConfigError("manifest: missing \"plan\"");
    return plan_from_json(manifest.at("plan"));
}

struct ComparisonReport {
    std::size_t points = 0;
    std::size_t compared = 0; // points where both backends produced a row
    double max_abs_dr2 = 0.0;
    double max_abs_dt2 = 0.0;
    std::size_t worst_index = 0;
    bool all_ok = true;
};

inline ComparisonReport compare_backends(const SweepPlan& base, Backend other) {
    SweepPlan alt = base;
    alt.backend = other;
    const SweepOutcome a = run_sweep(base);
    const SweepOutcome b = run_sweep(alt);

    ComparisonReport rep;
    rep.points = a.rows.size();
    double worst = -1.0;
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        if (!a.rows[i].ok || !b.rows[i].ok) {
            rep.all_ok = false;
            continue;
        }
        ++rep.compared;
        const double dr2 = std::abs(a.rows[i].r2 - b.rows[i].r2);
        const double dt2 = std::abs(a.rows[i].t2 - b.rows[i].t2);
        rep.max_abs_dr2 = std::max(rep.max_abs_dr2, dr2);
        rep.max_abs_dt2 = std::max(rep.max_abs_dt2, dt2);
        if (std::max(dr2, dt2) > worst) {
            worst = std::max(dr2, dt2);
            rep.worst_index = i;
        }
    }
    return rep;
}

} // namespace spinorlight
