#include <catch2/catch_amalgamated.hpp>

#include <string>

#include <spinorlight/config_io.hpp>

namespace sl = spinorlight;
using nlohmann::json;

TEST_CASE("frequency entries accept plain numbers and unit strings") {
    CHECK(sl::parse_frequency(json(5.0), "k") == 5.0);
    CHECK(sl::parse_frequency(json(-2.5e4), "k") == -2.5e4);

    CHECK(sl::parse_frequency(json("3 rad/s"), "k") == 3.0);
    CHECK(sl::parse_frequency(json("1e7 rad/s"), "k") == 1e7);
    CHECK(sl::parse_frequency(json("4 krad/s"), "k") == 4.0 * 1e3);
    CHECK(sl::parse_frequency(json("2 Grad/s"), "k") == 2.0 * 1e9);

    CHECK(sl::parse_frequency(json("5 kHz"), "k") == 5.0 * (2.0 * sl::pi * 1e3));
    CHECK(sl::parse_frequency(json("2.5MHz"), "k") == 2.5 * (2.0 * sl::pi * 1e6));
    CHECK(sl::parse_frequency(json("1 Hz"), "k") == 2.0 * sl::pi);
    CHECK(sl::parse_frequency(json("0.5 THz"), "k") == 0.5 * (2.0 * sl::pi * 1e12));
    CHECK(sl::parse_frequency(json("7"), "k") == 7.0); // bare string: rad/s

    CHECK_THROWS_AS(sl::parse_frequency(json("5 parsec"), "k"), sl::ConfigError);
    CHECK_THROWS_AS(sl::parse_frequency(json("fast"), "k"), sl::ConfigError);
    CHECK_THROWS_AS(sl::parse_frequency(json::array(), "k"), sl::ConfigError);
}

TEST_CASE("phase entries accept radians and pi expressions") {
    CHECK(sl::parse_phase(json(1.25), "k") == 1.25);
    CHECK(sl::parse_phase(json("pi"), "k") == sl::pi);
    CHECK(sl::parse_phase(json("pi/2"), "k") == sl::pi / 2.0);
    CHECK(sl::parse_phase(json("2pi/3"), "k") == 2.0 * sl::pi / 3.0);
    CHECK(sl::parse_phase(json("0.75 pi"), "k") == 0.75 * sl::pi);
    CHECK(sl::parse_phase(json("-pi"), "k") == -sl::pi);
    CHECK(sl::parse_phase(json("+pi"), "k") == sl::pi);
    CHECK(sl::parse_phase(json("3*pi/4"), "k") == 3.0 * sl::pi / 4.0);
    CHECK(sl::parse_phase(json("0.5"), "k") == 0.5);

    CHECK_THROWS_AS(sl::parse_phase(json("pi/0"), "k"), sl::ConfigError);
    CHECK_THROWS_AS(sl::parse_phase(json("2tau"), "k"), sl::ConfigError);
    CHECK_THROWS_AS(sl::parse_phase(json("pi/2/3"), "k"), sl::ConfigError);
    CHECK_THROWS_AS(sl::parse_phase(json("pi2"), "k"), sl::ConfigError);
    CHECK_THROWS_AS(sl::parse_phase(json(true), "k"), sl::ConfigError);
}

TEST_CASE("medium block parses, validates and rejects strangers") {
    const json good = json::parse(R"({
        "omega": "1 Mrad/s",
        "phase_s": "pi/2",
        "delta": "56.7 krad/s",
        "gamma": 0.0,
        "g2n": 1.7647058823529412e19,
        "c": 3e8,
        "length": 3e-4
    })");
    const sl::MediumConfig cfg = sl::medium_from_json(good);
    CHECK(cfg.omega == 1e6);
    CHECK(cfg.phase_s == sl::pi / 2.0);
    CHECK(cfg.delta == 56.7 * 1e3);
    CHECK(std::abs(cfg.v0() - 17.0) < 1e-10 * 17.0);

    json missing = good;
    missing.erase("g2n");
    CHECK_THROWS_AS(sl::medium_from_json(missing), sl::ConfigError);

    json stranger = good;
    stranger["omeag"] = 1.0;
    CHECK_THROWS_AS(sl::medium_from_json(stranger), sl::ConfigError);

    json invalid = good;
    invalid["gamma"] = -1.0;
    CHECK_THROWS_AS(sl::medium_from_json(invalid), sl::ConfigError);
}

TEST_CASE("medium json round trip is exact") {
    sl::MediumConfig cfg;
    cfg.omega = 1.0 / 3.0;
    cfg.phase_s = 0.7853981633974483;
    cfg.delta = -2.0 / 7.0;
    cfg.gamma = 0.1;
    cfg.g2n = 123.456;
    cfg.c = 2.9979e8;
    cfg.length = 1e-4;
    cfg.s_min = 2e-3;
    cfg.hbar = 1.0546e-34;

    const std::string text = sl::medium_to_json(cfg).dump();
    const sl::MediumConfig back = sl::medium_from_json(json::parse(text));
    CHECK(back.omega == cfg.omega);
    CHECK(back.phase_s == cfg.phase_s);
    CHECK(back.delta == cfg.delta);
    CHECK(back.gamma == cfg.gamma);
    CHECK(back.g2n == cfg.g2n);
    CHECK(back.c == cfg.c);
    CHECK(back.length == cfg.length);
    CHECK(back.s_min == cfg.s_min);
    CHECK(back.hbar == cfg.hbar);
}

TEST_CASE("time-domain settings round trip and reject strangers") {
    sl::TdSettings st;
    st.n_z = 321;
    st.cfl = 0.75;
    st.t_max = 12.5;
    st.ramp_transits = 3.5;
    st.scheme = sl::TdScheme::general;
    st.drift_tol = 2e-5;
    st.record_every = 7;

    const sl::TdSettings back = sl::td_settings_from_json(sl::td_settings_to_json(st));
    CHECK(back.n_z == st.n_z);
    CHECK(back.cfl == st.cfl);
    CHECK(back.t_max == st.t_max);
    CHECK(back.ramp_transits == st.ramp_transits);
    CHECK(back.scheme == st.scheme);
    CHECK(back.drift_tol == st.drift_tol);
    CHECK(back.record_every == st.record_every);

    CHECK_THROWS_AS(sl::td_settings_from_json(json::parse(R"({"nz": 12})")), sl::ConfigError);
    CHECK(sl::td_scheme_from_string("auto") == sl::TdScheme::automatic);
    CHECK(sl::td_scheme_from_string("dirac") == sl::TdScheme::dirac);
    CHECK(sl::td_scheme_from_string("general") == sl::TdScheme::general);
    CHECK_THROWS_AS(sl::td_scheme_from_string("verlet"), sl::ConfigError);
}

TEST_CASE("microscopic settings round trip and reject strangers") {
    sl::MbSettings st;
    st.n_z = 96;
    st.cfl = 0.9;
    st.t_max = 44.0;
    st.ramp_transits = 1.5;
    st.drift_tol = 3e-4;
    st.sqrt_n = 250.0;
    st.record_every = 3;

    const sl::MbSettings back = sl::mb_settings_from_json(sl::mb_settings_to_json(st));
    CHECK(back.n_z == st.n_z);
    CHECK(back.cfl == st.cfl);
    CHECK(back.t_max == st.t_max);
    CHECK(back.ramp_transits == st.ramp_transits);
    CHECK(back.drift_tol == st.drift_tol);
    CHECK(back.sqrt_n == st.sqrt_n);
    CHECK(back.record_every == st.record_every);

    CHECK_THROWS_AS(sl::mb_settings_from_json(json::parse(R"({"scheme": "dirac"})")),
                    sl::ConfigError);
}

TEST_CASE("schema text names every block") {
    const std::string schema = sl::config_schema_text();
    for (const char* word : {"medium", "omega", "phase_s", "sweep", "timedomain", "mb",
                             "grid", "backend", "variant"})
        CHECK(schema.find(word) != std::string::npos);
}
