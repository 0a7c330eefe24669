// Command-line front end. Subcommands wrap one solver each; recipes bundle
// the measured sodium-cell numbers (v0 = 17 m/s, L = 300 um) so the standard
// curves come out of one command. Exit codes: 0 success, 2 configuration or
// usage error, 3 numerical failure or refused regime.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include <spinorlight/bvp.hpp>
#include <spinorlight/config_io.hpp>
#include <spinorlight/maxwell_bloch.hpp>
#include <spinorlight/medium.hpp>
#include <spinorlight/scattering.hpp>
#include <spinorlight/sweep.hpp>
#include <spinorlight/timedomain.hpp>
#include <spinorlight/validation.hpp>
#include <spinorlight/version.hpp>

namespace sl = spinorlight;
using sl::json;

namespace {

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> g;
    g.reserve(n);
    for (int i = 0; i < n; ++i)
        g.push_back(n == 1 ? a : a + (b - a) * double(i) / double(n - 1));
    return g;
}

// Cold-cloud numbers quoted with the slow-light measurements.
sl::MediumConfig experimental_medium() {
    sl::MediumConfig cfg;
    cfg.omega = 1e6;
    cfg.c = 3e8;
    cfg.g2n = cfg.c * cfg.omega * cfg.omega / 17.0; // v0 = 17 m/s
    cfg.phase_s = 0.5 * sl::pi;
    cfg.delta = 5.67e4; // = v0/L for L = 300 um
    cfg.gamma = 0.0;
    cfg.length = 3e-4;
    return cfg;
}

struct Recipe {
    std::string name;
    std::string summary;
    sl::SweepPlan plan;
    std::vector<double> dk_grid; // set only for the dispersion recipe
};

Recipe make_recipe(const std::string& name) {
    Recipe r;
    r.name = name;
    if (name == "fig4") {
        r.summary = "dispersion branches and light-cone asymptote around the gap";
        r.plan.cfg = experimental_medium();
        r.dk_grid = linspace(-1e4, 1e4, 401);
        return r;
    }
    if (name == "fig5a" || name == "fig5b" || name == "fig5c") {
        const double s_phase =
            name == "fig5a" ? sl::pi / 3.0 : (name == "fig5b" ? sl::pi / 4.0 : sl::pi / 6.0);
        r.summary = "transparent-medium transmission vs thickness at S = " +
                    std::string(name == "fig5a" ? "pi/3" : name == "fig5b" ? "pi/4" : "pi/6");
        r.plan.cfg = experimental_medium();
        r.plan.cfg.phase_s = s_phase;
        r.plan.cfg.delta = 0.0;
        r.plan.axis = sl::SweepAxis::length;
        r.plan.variant = sl::ScatterVariant::zero_delta;
        r.plan.d_omega = 5.6667e4;
        r.plan.grid = linspace(0.0, 3.6e-3, 601); // dw L / v0 from 0 to 12
        return r;
    }
    if (name == "fig6") {
        r.summary = "band-center tunneling vs thickness in Compton lengths";
        r.plan.cfg = experimental_medium();
        r.plan.axis = sl::SweepAxis::length;
        r.plan.variant = sl::ScatterVariant::gap_center;
        const double lambda_c = sl::compton_length(r.plan.cfg);
        r.plan.grid = linspace(0.0, 5.0 * lambda_c, 501);
        return r;
    }
    if (name == "loss") {
        r.summary = "band-center reflection and transmission vs excited-state decay";
        r.plan.cfg = experimental_medium();
        r.plan.axis = sl::SweepAxis::gamma;
        r.plan.variant = sl::ScatterVariant::lossy;
        r.plan.grid = linspace(0.0, 3.5e7, 351);
        return r;
    }
    throw sl::ConfigError("unknown recipe \"" + name +
                          "\" (available: fig4, fig5a, fig5b, fig5c, fig6, loss)");
}

const char* recipe_list_text() {
    return "Recipes:\n"
           "  fig4   dispersion branches and light-cone asymptote around the gap\n"
           "  fig5a  transmission vs thickness, transparent medium, S = pi/3\n"
           "  fig5b  transmission vs thickness, transparent medium, S = pi/4\n"
           "  fig5c  transmission vs thickness, transparent medium, S = pi/6\n"
           "  fig6   band-center tunneling vs thickness in Compton lengths\n"
           "  loss   band-center response vs excited-state decay\n";
}

struct Options {
    std::string config;
    std::string out;
    std::string recipe;
    std::string backend;
    int steps = 0;
    int grid_n = 0;
    int workers = -1;
};

struct FileContext {
    sl::MediumConfig cfg;
    double d_omega = 0.0;
    sl::ScatterVariant variant = sl::ScatterVariant::exact;
    int bvp_steps = 4096;
    sl::TdSettings td;
    sl::MbSettings mb;
    json raw;
};

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw sl::ConfigError("cannot open config file: " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw sl::ConfigError(path + ": " + e.what());
    }
    return j;
}

FileContext load_context(const Options& opt, bool allow_recipe = true) {
    FileContext ctx;
    if (!opt.recipe.empty()) {
        if (!allow_recipe) throw sl::ConfigError("this subcommand does not take --recipe");
        const Recipe r = make_recipe(opt.recipe);
        ctx.cfg = r.plan.cfg;
        ctx.d_omega = r.plan.d_omega;
        ctx.variant = r.plan.variant;
        return ctx;
    }
    if (opt.config.empty()) throw sl::ConfigError("need --config <file> or --recipe <name>");
    ctx.raw = load_json_file(opt.config);
    sl::detail_io::check_keys(
        ctx.raw, {"medium", "d_omega", "scatter", "bvp", "timedomain", "mb", "sweep", "dispersion"},
        "config");
    if (!ctx.raw.contains("medium")) throw sl::ConfigError("config: missing \"medium\" block");
    ctx.cfg = sl::medium_from_json(ctx.raw.at("medium"));
    if (ctx.raw.contains("d_omega"))
        ctx.d_omega = sl::parse_frequency(ctx.raw.at("d_omega"), "d_omega");
    if (ctx.raw.contains("scatter")) {
        sl::detail_io::check_keys(ctx.raw.at("scatter"), {"variant"}, "scatter");
        if (ctx.raw.at("scatter").contains("variant"))
            ctx.variant =
                sl::variant_from_string(ctx.raw.at("scatter").at("variant").get<std::string>());
    }
    if (ctx.raw.contains("bvp")) {
        sl::detail_io::check_keys(ctx.raw.at("bvp"), {"steps"}, "bvp");
        if (ctx.raw.at("bvp").contains("steps"))
            ctx.bvp_steps = ctx.raw.at("bvp").at("steps").get<int>();
    }
    if (ctx.raw.contains("timedomain")) ctx.td = sl::td_settings_from_json(ctx.raw.at("timedomain"));
    if (ctx.raw.contains("mb")) ctx.mb = sl::mb_settings_from_json(ctx.raw.at("mb"));
    return ctx;
}

void emit(const std::string& content, const std::string& out_path) {
    if (out_path.empty())
        std::fputs(content.c_str(), stdout);
    else
        sl::write_text_file(out_path, content);
}

void write_side_manifest(const Options& opt, const char* subcommand, const sl::MediumConfig& cfg,
                         double d_omega, json extra = {}) {
    if (opt.out.empty()) return;
    json m;
    m["tool"] = "spinorlight";
    m["version"] = sl::version_string;
    m["subcommand"] = subcommand;
    m["medium"] = sl::medium_to_json(cfg);
    m["d_omega"] = d_omega;
    if (!extra.is_null() && !extra.empty()) m["settings"] = extra;
    sl::write_text_file(opt.out + ".manifest.json", m.dump(2) + "\n");
}

std::vector<double> respaced(std::vector<double> grid, int n) {
    if (n <= 0) return grid;
    if (grid.empty()) throw sl::ConfigError("--grid needs an existing grid to respace");
    return linspace(grid.front(), grid.back(), n);
}

int run_dispersion(const Options& opt) {
    FileContext ctx = load_context(opt);
    std::vector<double> grid;
    if (!opt.recipe.empty()) grid = make_recipe(opt.recipe).dk_grid;
    if (grid.empty() && ctx.raw.contains("dispersion")) {
        sl::detail_io::check_keys(ctx.raw.at("dispersion"), {"grid"}, "dispersion");
        grid = sl::grid_from_json(ctx.raw.at("dispersion").at("grid"), "dispersion.grid");
    }
    if (grid.empty())
        throw sl::ConfigError("dispersion needs a dk grid (config dispersion.grid or --recipe fig4)");
    grid = respaced(grid, opt.grid_n);

    const double vs = ctx.cfg.v0() * std::abs(ctx.cfg.sin_s());
    std::string csv = "dk,omega_plus,omega_minus,asymptote\n";
    char buf[160];
    for (double dk : grid) {
        const sl::DispersionPoint p = sl::dispersion(ctx.cfg, dk);
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", p.dk, p.omega_plus,
                      p.omega_minus, vs * dk);
        csv += buf;
    }
    emit(csv, opt.out);
    write_side_manifest(opt, "dispersion", ctx.cfg, ctx.d_omega, json{{"points", grid.size()}});
    return 0;
}

int run_scatter(const Options& opt) {
    FileContext ctx = load_context(opt);
    const sl::ScatterResult s = sl::scatter_variant(ctx.cfg, ctx.d_omega, ctx.variant);
    json out;
    out["variant"] = sl::to_string(ctx.variant);
    out["d_omega"] = ctx.d_omega;
    out["r2"] = s.r2;
    out["t2"] = s.t2;
    out["defect"] = s.defect;
    out["r"] = {s.r.real(), s.r.imag()};
    out["t"] = {s.t.real(), s.t.imag()};
    if (ctx.cfg.length > 0.0 && std::abs(ctx.cfg.sin_s()) >= ctx.cfg.s_min)
        out["oscillation_period"] = sl::oscillation_period(ctx.cfg);
    emit(out.dump(2) + "\n", opt.out);
    write_side_manifest(opt, "scatter", ctx.cfg, ctx.d_omega,
                        json{{"variant", sl::to_string(ctx.variant)}});
    return 0;
}

int run_bvp(const Options& opt) {
    FileContext ctx = load_context(opt);
    const int steps = opt.steps > 0 ? opt.steps : ctx.bvp_steps;
    const sl::BvpSolution s = sl::solve_rt(ctx.cfg, ctx.d_omega, steps);
    json out;
    out["steps"] = steps;
    out["r2"] = std::norm(s.r);
    out["t2"] = std::norm(s.t);
    out["r"] = {s.r.real(), s.r.imag()};
    out["t"] = {s.t.real(), s.t.imag()};
    out["estimated_error"] = s.estimated_error;
    out["det_drift"] = s.det_drift;
    emit(out.dump(2) + "\n", opt.out);
    write_side_manifest(opt, "bvp", ctx.cfg, ctx.d_omega, json{{"steps", steps}});
    return 0;
}

std::string record_csv(const sl::PulseRecord& rec) {
    std::string csv = "t,transmitted,reflected,stored_norm\n";
    char buf[160];
    for (std::size_t i = 0; i < rec.t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", rec.t[i], rec.transmitted[i],
                      rec.reflected[i], rec.stored_norm[i]);
        csv += buf;
    }
    return csv;
}

int run_timedomain(const Options& opt) {
    FileContext ctx = load_context(opt);
    const sl::SteadyResult s = sl::run_to_steady_state(ctx.cfg, ctx.d_omega, ctx.td);
    json out;
    out["r2"] = s.r2;
    out["t2"] = s.t2;
    out["converged"] = s.converged;
    out["drift"] = s.drift;
    out["transit"] = s.transit;
    std::fputs((out.dump(2) + "\n").c_str(), stdout);
    if (!opt.out.empty()) {
        sl::write_text_file(opt.out, record_csv(s.record));
        write_side_manifest(opt, "timedomain", ctx.cfg, ctx.d_omega,
                            sl::td_settings_to_json(ctx.td));
    }
    if (!s.converged) {
        std::fprintf(stderr, "steady state not reached: drift %.3e per transit\n", s.drift);
        return 3;
    }
    return 0;
}

int run_mb(const Options& opt) {
    FileContext ctx = load_context(opt);
    const sl::MbSteadyResult s = sl::run_mb_steady(ctx.cfg, ctx.d_omega, ctx.mb);
    json out;
    out["r2"] = s.r2;
    out["t2"] = s.t2;
    out["converged"] = s.converged;
    out["drift"] = s.drift;
    out["transit"] = s.transit;
    out["max_phie_over_sqrtn"] = s.max_phie_over_sqrtn;
    out["max_phis_over_sqrtn"] = s.max_phis_over_sqrtn;
    out["linearization_warn"] = s.linearization_warn;
    std::fputs((out.dump(2) + "\n").c_str(), stdout);
    if (s.linearization_warn)
        std::fprintf(stderr, "warning: atomic amplitudes above 10%% of sqrt(n); "
                             "the linearized model is being stretched\n");
    if (!opt.out.empty()) {
        sl::write_text_file(opt.out, record_csv(s.record));
        write_side_manifest(opt, "mb", ctx.cfg, ctx.d_omega, sl::mb_settings_to_json(ctx.mb));
    }
    if (!s.converged) {
        std::fprintf(stderr, "steady state not reached: drift %.3e per transit\n", s.drift);
        return 3;
    }
    return 0;
}

int run_sweep_cmd(const Options& opt) {
    sl::SweepPlan plan;
    if (!opt.recipe.empty()) {
        const Recipe r = make_recipe(opt.recipe);
        if (r.dk_grid.size() > 0)
            throw sl::ConfigError("recipe \"" + opt.recipe + "\" is a dispersion recipe");
        plan = r.plan;
    } else {
        FileContext ctx = load_context(opt);
        if (!ctx.raw.contains("sweep"))
            throw sl::ConfigError("config: sweep needs a \"sweep\" block (or use --recipe)");
        const json& sw = ctx.raw.at("sweep");
        sl::detail_io::check_keys(
            sw, {"axis", "grid", "variant", "backend", "bvp_steps", "workers"}, "sweep");
        for (const char* req : {"axis", "grid"})
            if (!sw.contains(req))
                throw sl::ConfigError(std::string("sweep: missing required key \"") + req + "\"");
        plan.cfg = ctx.cfg;
        plan.d_omega = ctx.d_omega;
        plan.td = ctx.td;
        plan.mb = ctx.mb;
        plan.bvp_steps = ctx.bvp_steps;
        plan.variant = ctx.variant;
        plan.axis = sl::axis_from_string(sw.at("axis").get<std::string>());
        plan.grid = sl::grid_from_json(sw.at("grid"), "sweep.grid");
        if (sw.contains("variant"))
            plan.variant = sl::variant_from_string(sw.at("variant").get<std::string>());
        if (sw.contains("backend"))
            plan.backend = sl::backend_from_string(sw.at("backend").get<std::string>());
        if (sw.contains("bvp_steps")) plan.bvp_steps = sw.at("bvp_steps").get<int>();
        if (sw.contains("workers")) plan.workers = sw.at("workers").get<int>();
    }
    if (!opt.backend.empty()) plan.backend = sl::backend_from_string(opt.backend);
    if (opt.steps > 0) plan.bvp_steps = opt.steps;
    if (opt.workers >= 0) plan.workers = opt.workers;
    plan.grid = respaced(plan.grid, opt.grid_n);

    const sl::SweepOutcome outcome = sl::run_sweep(plan);
    emit(sl::to_csv(outcome.rows), opt.out);
    if (!opt.out.empty())
        sl::write_text_file(opt.out + ".manifest.json",
                            sl::make_manifest(plan, outcome).dump(2) + "\n");
    std::fprintf(stderr, "%zu points, %zu failed, %d worker(s), %.2f s\n", outcome.rows.size(),
                 outcome.failures, outcome.workers_used, outcome.wall_seconds);
    if (outcome.failures == outcome.rows.size()) {
        std::fprintf(stderr, "every point failed; first error: %s\n",
                     outcome.rows.front().error.c_str());
        return 3;
    }
    return 0;
}

int run_validate() {
    const std::vector<sl::CriterionResult> results = sl::run_all_criteria();
    const int failures = sl::print_criteria(results, stdout);
    return failures == 0 ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinorlight: two-component slow light laboratory"};
    app.set_version_flag("--version", sl::version_string);
    app.require_subcommand(0, 1);
    bool schema = false;
    app.add_flag("--schema", schema, "print the configuration file schema and exit");

    Options opt;
    auto add_common = [&opt](CLI::App* sub, bool with_recipe = true) {
        sub->add_option("--config", opt.config, "JSON configuration file");
        sub->add_option("--out", opt.out, "output file (default: stdout)");
        if (with_recipe)
            sub->add_option("--recipe", opt.recipe,
                            "built-in parameter set: fig4, fig5a, fig5b, fig5c, fig6, loss");
    };

    CLI::App* c_disp = app.add_subcommand("dispersion", "band structure over a dk grid");
    add_common(c_disp);
    c_disp->add_option("--grid", opt.grid_n, "respace the dk grid to N points");

    CLI::App* c_scat = app.add_subcommand("scatter", "closed-form reflection/transmission");
    add_common(c_scat);

    CLI::App* c_bvp = app.add_subcommand("bvp", "reflection/transmission by direct integration");
    add_common(c_bvp);
    c_bvp->add_option("--steps", opt.steps, "integration steps (default 4096)");

    CLI::App* c_td = app.add_subcommand("timedomain", "drive the effective model to steady state");
    add_common(c_td);

    CLI::App* c_mb = app.add_subcommand("mb", "drive the full atom-field model to steady state");
    add_common(c_mb);

    CLI::App* c_sweep = app.add_subcommand("sweep", "parameter sweep to CSV plus manifest");
    add_common(c_sweep);
    c_sweep->add_option("--backend", opt.backend,
                        "closed_form, bvp, timedomain or maxwell_bloch");
    c_sweep->add_option("--steps", opt.steps, "bvp backend integration steps");
    c_sweep->add_option("--grid", opt.grid_n, "respace the sweep grid to N points");
    c_sweep->add_option("--workers", opt.workers,
                        "worker threads (0 = SPINOR_LIGHT_WORKERS or all cores)");

    CLI::App* c_val = app.add_subcommand("validate", "run the acceptance criteria");
    (void)c_val;

    if (argc == 1) {
        std::cout << app.help() << "\n" << recipe_list_text();
        return 2;
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        const int code = app.exit(e);
        std::cout << "\n" << recipe_list_text();
        return code;
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (schema) {
        std::fputs(sl::config_schema_text(), stdout);
        std::fputs("\n", stdout);
        std::fputs(recipe_list_text(), stdout);
        return 0;
    }
    if (app.get_subcommands().empty()) {
        std::cout << app.help() << "\n" << recipe_list_text();
        return 2;
    }

    try {
        if (app.got_subcommand(c_disp)) return run_dispersion(opt);
        if (app.got_subcommand(c_scat)) return run_scatter(opt);
        if (app.got_subcommand(c_bvp)) return run_bvp(opt);
        if (app.got_subcommand(c_td)) return run_timedomain(opt);
        if (app.got_subcommand(c_mb)) return run_mb(opt);
        if (app.got_subcommand(c_sweep)) return run_sweep_cmd(opt);
        if (app.got_subcommand(c_val)) return run_validate();
    } catch (const sl::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const json::exception& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const sl::Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
