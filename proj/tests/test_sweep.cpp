#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <spinorlight/sweep.hpp>

namespace sl = spinorlight;

namespace {

sl::MediumConfig unit_medium() {
    sl::MediumConfig cfg;
    cfg.omega = 1.0;
    cfg.phase_s = 0.5 * sl::pi;
    cfg.delta = 0.8;
    cfg.gamma = 0.0;
    cfg.g2n = 1e3;
    cfg.c = 1e3; // v0 = 1
    cfg.length = 1.0;
    return cfg;
}

std::vector<double> linear_grid(double lo, double hi, int n) {
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i) g[i] = lo + (hi - lo) * double(i) / double(n - 1);
    return g;
}

} // namespace

TEST_CASE("worker resolution order: explicit, environment, hardware") {
    unsetenv("SPINOR_LIGHT_WORKERS");
    CHECK(sl::resolve_workers(5, 100) == 5);
    CHECK(sl::resolve_workers(5, 3) == 3); // never more workers than points
    CHECK(sl::resolve_workers(0, 100) >= 1);

    setenv("SPINOR_LIGHT_WORKERS", "7", 1);
    CHECK(sl::resolve_workers(0, 100) == 7);
    CHECK(sl::resolve_workers(2, 100) == 2); // explicit beats environment

    setenv("SPINOR_LIGHT_WORKERS", "abc", 1);
    CHECK_THROWS_AS(sl::resolve_workers(0, 100), sl::ConfigError);
    setenv("SPINOR_LIGHT_WORKERS", "-3", 1);
    CHECK_THROWS_AS(sl::resolve_workers(0, 100), sl::ConfigError);
    setenv("SPINOR_LIGHT_WORKERS", "2x", 1);
    CHECK_THROWS_AS(sl::resolve_workers(0, 100), sl::ConfigError);

    unsetenv("SPINOR_LIGHT_WORKERS");
}

TEST_CASE("threaded sweep equals the serial closed form point by point") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.axis = sl::SweepAxis::d_omega;
    plan.grid = linear_grid(-2.0, 2.0, 37);
    plan.variant = sl::ScatterVariant::exact;
    plan.workers = 4;

    const sl::SweepOutcome out = sl::run_sweep(plan);
    REQUIRE(out.rows.size() == plan.grid.size());
    CHECK(out.workers_used == 4);
    CHECK(out.failures == 0);

    for (std::size_t i = 0; i < plan.grid.size(); ++i) {
        const sl::ScatterResult direct = sl::scatter(plan.cfg, plan.grid[i]);
        CHECK(out.rows[i].axis == plan.grid[i]);
        CHECK(out.rows[i].r2 == direct.r2);
        CHECK(out.rows[i].t2 == direct.t2);
        CHECK(out.rows[i].defect == direct.defect);
    }
}

TEST_CASE("worker count never changes the bytes") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.gamma = 0.6;
    plan.axis = sl::SweepAxis::length;
    plan.grid = linear_grid(0.05, 3.0, 41);
    plan.variant = sl::ScatterVariant::lossy;

    plan.workers = 1;
    const std::string serial = sl::to_csv(sl::run_sweep(plan).rows);
    plan.workers = 4;
    const std::string threaded = sl::to_csv(sl::run_sweep(plan).rows);
    CHECK(serial == threaded);
}

TEST_CASE("failing points become quarantined rows, not a dead sweep") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.delta = 1.0;
    plan.cfg.gamma = 1.0; // deff = sqrt(2): asymptotics need L >= 5/sqrt(2) ~ 3.54
    plan.axis = sl::SweepAxis::length;
    plan.grid = {1.0, 4.0, 2.0, 6.0};
    plan.variant = sl::ScatterVariant::lossy_asymptotic;
    plan.workers = 2;

    const sl::SweepOutcome out = sl::run_sweep(plan);
    REQUIRE(out.rows.size() == 4);
    CHECK(out.failures == 2);

    CHECK_FALSE(out.rows[0].ok);
    CHECK(std::isnan(out.rows[0].r2));
    CHECK(!out.rows[0].error.empty());
    CHECK(out.rows[1].ok);
    CHECK_FALSE(out.rows[2].ok);
    CHECK(out.rows[3].ok);

    const std::string csv = sl::to_csv(out.rows);
    CHECK(csv.find("nan") != std::string::npos);
}

TEST_CASE("csv layout and value round trip") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.axis = sl::SweepAxis::d_omega;
    plan.grid = {0.0, 1.0 / 3.0, 0.7071067811865476};
    plan.variant = sl::ScatterVariant::exact;
    plan.workers = 1;
    const sl::SweepOutcome out = sl::run_sweep(plan);

    const std::string csv = sl::to_csv(out.rows);
    std::istringstream lines(csv);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "axis,r2,t2,defect");

    std::string line;
    std::size_t row = 0;
    while (std::getline(lines, line)) {
        REQUIRE(row < out.rows.size());
        // 17 significant digits must reproduce the stored doubles bit for bit.
        const char* p = line.c_str();
        char* end = nullptr;
        const double axis = std::strtod(p, &end);
        REQUIRE(*end == ',');
        const double r2 = std::strtod(end + 1, &end);
        REQUIRE(*end == ',');
        const double t2 = std::strtod(end + 1, &end);
        REQUIRE(*end == ',');
        const double defect = std::strtod(end + 1, &end);
        CHECK(axis == out.rows[row].axis);
        CHECK(r2 == out.rows[row].r2);
        CHECK(t2 == out.rows[row].t2);
        CHECK(defect == out.rows[row].defect);
        ++row;
    }
    CHECK(row == out.rows.size());
}

TEST_CASE("text files land on disk intact") {
    const std::string path = "sweep_io_check.csv";
    const std::string payload = "axis,r2,t2,defect\n1,0.5,0.5,0\n";
    sl::write_text_file(path, payload);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == payload);
    std::remove(path.c_str());

    CHECK_THROWS_AS(sl::write_text_file("no_such_dir/x.csv", "x"), sl::ConfigError);
}

TEST_CASE("grid specifications") {
    using nlohmann::json;
    const auto direct = sl::grid_from_json(json::parse("[1.0, 2.5, -3.0]"), "t");
    CHECK(direct == std::vector<double>{1.0, 2.5, -3.0});

    const auto lin = sl::grid_from_json(json::parse(R"({"start":0,"stop":10,"count":5})"), "t");
    REQUIRE(lin.size() == 5);
    CHECK(lin.front() == 0.0);
    CHECK(lin.back() == 10.0);
    CHECK(lin[2] == 5.0);

    const auto logg = sl::grid_from_json(
        json::parse(R"({"start":1,"stop":100,"count":3,"spacing":"log"})"), "t");
    REQUIRE(logg.size() == 3);
    CHECK(std::abs(logg[1] - 10.0) < 1e-12);

    CHECK_THROWS_AS(sl::grid_from_json(json::parse("[]"), "t"), sl::ConfigError);
    CHECK_THROWS_AS(sl::grid_from_json(json::parse(R"({"start":0,"stop":1})"), "t"),
                    sl::ConfigError);
    CHECK_THROWS_AS(sl::grid_from_json(json::parse(R"({"start":0,"stop":1,"count":0})"), "t"),
                    sl::ConfigError);
    CHECK_THROWS_AS(
        sl::grid_from_json(json::parse(R"({"start":-1,"stop":1,"count":3,"spacing":"log"})"), "t"),
        sl::ConfigError);
    CHECK_THROWS_AS(
        sl::grid_from_json(json::parse(R"({"start":0,"stop":1,"count":3,"spacing":"odd"})"), "t"),
        sl::ConfigError);
}

TEST_CASE("plan survives the json round trip exactly") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.delta = 1.0 / 3.0;
    plan.axis = sl::SweepAxis::length;
    plan.grid = {0.25, 0.5, 1.0 / 7.0};
    plan.variant = sl::ScatterVariant::lossy;
    plan.d_omega = 0.3;
    plan.backend = sl::Backend::bvp;
    plan.bvp_steps = 512;
    plan.workers = 3;
    plan.td.n_z = 77;
    plan.td.scheme = sl::TdScheme::general;
    plan.mb.sqrt_n = 55.0;

    const std::string text = sl::plan_to_json(plan).dump();
    const sl::SweepPlan back = sl::plan_from_json(nlohmann::json::parse(text));

    CHECK(back.cfg.omega == plan.cfg.omega);
    CHECK(back.cfg.delta == plan.cfg.delta);
    CHECK(back.cfg.phase_s == plan.cfg.phase_s);
    CHECK(back.grid == plan.grid);
    CHECK(back.axis == plan.axis);
    CHECK(back.variant == plan.variant);
    CHECK(back.d_omega == plan.d_omega);
    CHECK(back.backend == plan.backend);
    CHECK(back.bvp_steps == plan.bvp_steps);
    CHECK(back.workers == plan.workers);
    CHECK(back.td.n_z == plan.td.n_z);
    CHECK(back.td.scheme == plan.td.scheme);
    CHECK(back.mb.sqrt_n == plan.mb.sqrt_n);
}

TEST_CASE("manifest records the plan and the failures") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.gamma = 1.0;
    plan.axis = sl::SweepAxis::length;
    plan.grid = {1.0, 6.0};
    plan.variant = sl::ScatterVariant::lossy_asymptotic;
    plan.workers = 1;

    const sl::SweepOutcome out = sl::run_sweep(plan);
    const nlohmann::json manifest = sl::make_manifest(plan, out);

    CHECK(manifest.at("tool") == "spinorlight");
    CHECK(manifest.at("points") == 2);
    CHECK(manifest.at("csv_header") == "axis,r2,t2,defect");
    REQUIRE(manifest.at("failures").size() == out.failures);
    CHECK(manifest.at("failures")[0].at("index") == 0);

    const sl::SweepPlan again = sl::plan_from_manifest(manifest);
    CHECK(again.grid == plan.grid);
    CHECK(again.variant == plan.variant);
    CHECK(again.cfg.gamma == plan.cfg.gamma);

    CHECK_THROWS_AS(sl::plan_from_manifest(nlohmann::json::object()), sl::ConfigError);
}

TEST_CASE("numerical backends cross-check the closed form") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.gamma = 0.3;
    plan.cfg.phase_s = 1.0;
    plan.cfg.length = 1.5;
    plan.axis = sl::SweepAxis::d_omega;
    plan.grid = linear_grid(-2.0, 2.0, 21);
    plan.variant = sl::ScatterVariant::exact;
    plan.workers = 1;

    const sl::ComparisonReport rep = sl::compare_backends(plan, sl::Backend::bvp);
    CHECK(rep.points == 21);
    CHECK(rep.compared == 21);
    CHECK(rep.all_ok);
    CHECK(rep.max_abs_dr2 < 1e-8);
    CHECK(rep.max_abs_dt2 < 1e-8);
}

TEST_CASE("time-domain backend feeds the sweep") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.c = 1e4;
    plan.cfg.g2n = 1e4; // v0 = 1 with a soft vacuum correction
    plan.cfg.delta = 1.0;
    plan.axis = sl::SweepAxis::d_omega;
    plan.grid = {0.0, 0.5};
    plan.backend = sl::Backend::timedomain;
    plan.td.n_z = 128;
    plan.workers = 1;

    const sl::SweepOutcome out = sl::run_sweep(plan);
    REQUIRE(out.failures == 0);
    for (std::size_t i = 0; i < plan.grid.size(); ++i) {
        const sl::ScatterResult closed = sl::scatter(plan.cfg, plan.grid[i]);
        CHECK(std::abs(out.rows[i].r2 - closed.r2) < 2e-2);
        CHECK(std::abs(out.rows[i].t2 - closed.t2) < 2e-2);
    }

    // A hopeless steadiness demand turns into a quarantined row.
    plan.grid = {0.25};
    plan.td.drift_tol = 1e-30;
    const sl::SweepOutcome bad = sl::run_sweep(plan);
    CHECK(bad.failures == 1);
    CHECK_FALSE(bad.rows[0].ok);
    CHECK(!bad.rows[0].error.empty());
}

TEST_CASE("microscopic backend feeds the sweep") {
    sl::SweepPlan plan;
    plan.cfg = unit_medium();
    plan.cfg.delta = 0.0;
    plan.cfg.gamma = 0.5;
    plan.cfg.g2n = 25.0;
    plan.cfg.c = 1.0; // v0 = 0.04
    plan.cfg.length = 0.04;
    plan.axis = sl::SweepAxis::d_omega;
    plan.grid = {0.0};
    plan.backend = sl::Backend::maxwell_bloch;
    plan.mb.n_z = 48;
    plan.mb.ramp_transits = 6.0;
    plan.mb.t_max = 36.0; // the short cell rings for ~30 transits before settling
    plan.workers = 1;

    const sl::SweepOutcome out = sl::run_sweep(plan);
    REQUIRE(out.failures == 0);
    CHECK(out.rows[0].t2 > 0.97);
    CHECK(out.rows[0].r2 < 1e-2);
}

TEST_CASE("name tables round trip") {
    using namespace sl;
    for (Backend b : {Backend::closed_form, Backend::bvp, Backend::timedomain,
                      Backend::maxwell_bloch})
        CHECK(backend_from_string(to_string(b)) == b);
    for (SweepAxis a : {SweepAxis::length, SweepAxis::d_omega, SweepAxis::delta,
                        SweepAxis::phase_s, SweepAxis::gamma})
        CHECK(axis_from_string(to_string(a)) == a);
    for (ScatterVariant v :
         {ScatterVariant::exact, ScatterVariant::zero_delta, ScatterVariant::gap_center,
          ScatterVariant::lossy, ScatterVariant::lossy_asymptotic})
        CHECK(variant_from_string(to_string(v)) == v);

    CHECK_THROWS_AS(backend_from_string("warp"), ConfigError);
    CHECK_THROWS_AS(axis_from_string("sideways"), ConfigError);
    CHECK_THROWS_AS(variant_from_string("magic"), ConfigError);
}
