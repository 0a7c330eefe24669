#pragma once

// JSON configuration parsing. Frequencies accept bare numbers (rad/s) or
// strings with a unit ("5 kHz" means 2*pi*5e3 rad/s). Angles accept bare
// radians or "pi" expressions ("pi/2", "2pi/3", "0.75 pi"). Unknown keys are
// rejected so typos fail loudly instead of silently using a default.

#include <cctype>
#include <cstdlib>
#include <initializer_list>
#include <string>

#include "json.hpp"

#include "errors.hpp"
#include "maxwell_bloch.hpp"
#include "medium.hpp"
#include "timedomain.hpp"

namespace spinorlight {

using nlohmann::json;

namespace detail_io {

inline void check_keys(const json& j, std::initializer_list<const char*> allowed,
                       const char* where) {
    if (!j.is_object()) throw ConfigError(std::string(where) + ": expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool known = false;
        for (const char* k : allowed)
            if (it.key() == k) {
                known = true;
                break;
            }
        if (!known)
            throw ConfigError(std::string(where) + ": unknown key \"" + it.key() + "\"");
    }
}

inline std::string strip_spaces(const std::string& s) {
    std::string out;
    for (char c : s)
        if (!std::isspace(static_cast<unsigned char>(c))) out += c;
    return out;
}

inline double full_strtod(const std::string& s, const char* key) {
    const char* begin = s.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw ConfigError(std::string(key) + ": cannot parse number from \"" + s + "\"");
    return v;
}

} // namespace detail_io

// Frequency-valued entry: number (rad/s) or "<value> <unit>" string.
inline double parse_frequency(const json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string())
        throw ConfigError(std::string(key) + ": expected a number or a unit string");
    const std::string raw = v.get<std::string>();
    const char* begin = raw.c_str();
    char* end = nullptr;
    const double value = std::strtod(begin, &end);
    if (end == begin)
        throw ConfigError(std::string(key) + ": cannot parse number from \"" + raw + "\"");
    std::string unit = detail_io::strip_spaces(std::string(end));
    struct UnitScale {
        const char* name;
        double scale;
    };
    static const UnitScale table[] = {
        {"", 1.0},          {"rad/s", 1.0},     {"krad/s", 1e3},
        {"Mrad/s", 1e6},    {"Grad/s", 1e9},    {"Hz", 2.0 * pi},
        {"kHz", 2.0 * pi * 1e3}, {"MHz", 2.0 * pi * 1e6}, {"GHz", 2.0 * pi * 1e9},
        {"THz", 2.0 * pi * 1e12},
    };
    for (const UnitScale& u : table)
        if (unit == u.name) return value * u.scale;
    throw ConfigError(std::string(key) + ": unknown frequency unit \"" + unit + "\"");
}

// Angle-valued entry: number (radians) or a "pi" expression.
inline double parse_phase(const json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (!v.is_string())
        throw ConfigError(std::string(key) + ": expected a number or a pi expression string");
    std::string s = detail_io::strip_spaces(v.get<std::string>());
    std::string compact;
    for (char c : s)
        if (c != '*') compact += c;
    const std::size_t pos = compact.find("pi");
    if (pos == std::string::npos) return detail_io::full_strtod(compact, key);

    const std::string prefix = compact.substr(0, pos);
    const std::string suffix = compact.substr(pos + 2);
    double num = 1.0;
    if (prefix == "-")
        num = -1.0;
    else if (!prefix.empty() && prefix != "+")
        num = detail_io::full_strtod(prefix, key);
    double den = 1.0;
    if (!suffix.empty()) {
        if (suffix[0] != '/')
            throw ConfigError(std::string(key) + ": malformed pi expression \"" + s + "\"");
        den = detail_io::full_strtod(suffix.substr(1), key);
        if (den == 0.0) throw ConfigError(std::string(key) + ": division by zero");
    }
    return num * pi / den;
}

inline double parse_number(const json& j, const char* key) {
    if (!j.is_number()) throw ConfigError(std::string(key) + ": expected a number");
    return j.get<double>();
}

inline MediumConfig medium_from_json(const json& j) {
    detail_io::check_keys(
        j, {"omega", "phase_s", "delta", "gamma", "g2n", "c", "length", "s_min", "hbar"},
        "medium");
    for (const char* req : {"omega", "phase_s", "delta", "gamma", "g2n", "c", "length"})
        if (!j.contains(req))
            throw ConfigError(std::string("medium: missing required key \"") + req + "\"");
    MediumConfig cfg;
    cfg.omega = parse_frequency(j.at("omega"), "medium.omega");
    cfg.phase_s = parse_phase(j.at("phase_s"), "medium.phase_s");
    cfg.delta = parse_frequency(j.at("delta"), "medium.delta");
    cfg.gamma = parse_frequency(j.at("gamma"), "medium.gamma");
    cfg.g2n = parse_number(j.at("g2n"), "medium.g2n");
    cfg.c = parse_number(j.at("c"), "medium.c");
    cfg.length = parse_number(j.at("length"), "medium.length");
    if (j.contains("s_min")) cfg.s_min = parse_number(j.at("s_min"), "medium.s_min");
    if (j.contains("hbar")) cfg.hbar = parse_number(j.at("hbar"), "medium.hbar");
    cfg.validate();
    return cfg;
}

inline json medium_to_json(const MediumConfig& cfg) {
    json j;
    j["omega"] = cfg.omega;
    j["phase_s"] = cfg.phase_s;
    j["delta"] = cfg.delta;
    j["gamma"] = cfg.gamma;
    j["g2n"] = cfg.g2n;
    j["c"] = cfg.c;
    j["length"] = cfg.length;
    j["s_min"] = cfg.s_min;
    j["hbar"] = cfg.hbar;
    return j;
}

inline const char* to_string(TdScheme s) {
    switch (s) {
        case TdScheme::automatic: return "auto";
        case TdScheme::dirac: return "dirac";
        case TdScheme::general: return "general";
    }
    return "auto";
}

inline TdScheme td_scheme_from_string(const std::string& s) {
    if (s == "auto" || s == "automatic") return TdScheme::automatic;
    if (s == "dirac") return TdScheme::dirac;
    if (s == "general") return TdScheme::general;
    throw ConfigError("unknown time-domain scheme \"" + s + "\"");
}

inline TdSettings td_settings_from_json(const json& j) {
    detail_io::check_keys(j,
                          {"n_z", "cfl", "t_max", "ramp_transits", "scheme", "drift_tol",
                           "record_every"},
                          "timedomain");
    TdSettings st;
    if (j.contains("n_z")) st.n_z = j.at("n_z").get<int>();
    if (j.contains("cfl")) st.cfl = parse_number(j.at("cfl"), "timedomain.cfl");
    if (j.contains("t_max")) st.t_max = parse_number(j.at("t_max"), "timedomain.t_max");
    if (j.contains("ramp_transits"))
        st.ramp_transits = parse_number(j.at("ramp_transits"), "timedomain.ramp_transits");
    if (j.contains("scheme")) st.scheme = td_scheme_from_string(j.at("scheme").get<std::string>());
    if (j.contains("drift_tol"))
        st.drift_tol = parse_number(j.at("drift_tol"), "timedomain.drift_tol");
    if (j.contains("record_every")) st.record_every = j.at("record_every").get<int>();
    return st;
}

inline json td_settings_to_json(const TdSettings& st) {
    json j;
    j["n_z"] = st.n_z;
    j["cfl"] = st.cfl;
    j["t_max"] = st.t_max;
    j["ramp_transits"] = st.ramp_transits;
    j["scheme"] = to_string(st.scheme);
    j["drift_tol"] = st.drift_tol;
    j["record_every"] = st.record_every;
    return j;
}

inline MbSettings mb_settings_from_json(const json& j) {
    detail_io::check_keys(
        j, {"n_z", "cfl", "t_max", "ramp_transits", "drift_tol", "sqrt_n", "record_every"},
        "mb");
    MbSettings st;
    if (j.contains("n_z")) st.n_z = j.at("n_z").get<int>();
    if (j.contains("cfl")) st.cfl = parse_number(j.at("cfl"), "mb.cfl");
    if (j.contains("t_max")) st.t_max = parse_number(j.at("t_max"), "mb.t_max");
    if (j.contains("ramp_transits"))
        st.ramp_transits = parse_number(j.at("ramp_transits"), "mb.ramp_transits");
    if (j.contains("drift_tol")) st.drift_tol = parse_number(j.at("drift_tol"), "mb.drift_tol");
    if (j.contains("sqrt_n")) st.sqrt_n = parse_number(j.at("sqrt_n"), "mb.sqrt_n");
    if (j.contains("record_every")) st.record_every = j.at("record_every").get<int>();
    return st;
}

inline json mb_settings_to_json(const MbSettings& st) {
    json j;
    j["n_z"] = st.n_z;
    j["cfl"] = st.cfl;
    j["t_max"] = st.t_max;
    j["ramp_transits"] = st.ramp_transits;
    j["drift_tol"] = st.drift_tol;
    j["sqrt_n"] = st.sqrt_n;
    j["record_every"] = st.record_every;
    return j;
}

inline const char* config_schema_text() {
    return R"(Configuration file schema (JSON)
================================

{
  "medium": {                      required by every subcommand
    "omega":   number | string,    control Rabi frequency; bare numbers are
                                   rad/s, strings take a unit: "5 kHz",
                                   "2.1 MHz", "1e7 rad/s"
    "phase_s": number | string,    relative control phase in radians, or a pi
                                   expression: "pi/2", "2pi/3", "0.75 pi"
    "delta":   number | string,    two-photon detuning (+delta and -delta on
                                   the two components), frequency units
    "gamma":   number | string,    excited-state decay rate, frequency units
    "g2n":     number,             collective coupling g^2 n  [rad^2/s^2]
    "c":       number,             vacuum speed of light      [m/s]
    "length":  number,             medium length              [m]
    "s_min":   number, optional,   |sin S| guard threshold (default 1e-3)
    "hbar":    number, optional    unit system knob (default 1.0)
  },

  "d_omega": number | string,      optional probe detuning from the carrier,
                                   frequency units (default 0)

  "scatter": {                     optional, used by `scatter`
    "variant": "exact" | "zero_delta" | "gap_center" | "lossy"
             | "lossy_asymptotic"
  },

  "bvp":        { "steps": integer },            optional, used by `bvp`
  "timedomain": { "n_z", "cfl", "t_max", "ramp_transits",
                  "scheme": "auto"|"dirac"|"general",
                  "drift_tol", "record_every" },  optional
  "mb":         { "n_z", "cfl", "t_max", "ramp_transits",
                  "drift_tol", "sqrt_n", "record_every" },  optional

  "sweep": {                       required by `sweep` unless --recipe is used
    "axis": "length" | "d_omega" | "delta" | "phase_s" | "gamma",
    "grid": [v0, v1, ...]          explicit values, or
            { "start": a, "stop": b, "count": n,
              "spacing": "linear" | "log" },
    "variant": see scatter.variant (closed-form backend only),
    "backend": "closed_form" | "bvp" | "timedomain" | "maxwell_bloch",
    "bvp_steps": integer,
    "workers": integer             0 = use SPINOR_LIGHT_WORKERS or all cores
  },

  "dispersion": {                  optional, used by `dispersion`
    "grid": as sweep.grid          values are the wavenumber offset dk [1/m]
  }
}

Unknown keys anywhere are an error. The environment variable
SPINOR_LIGHT_WORKERS sets the worker count when neither --workers nor the
config file does. CSV output is identical for every worker count.
)";
}

} // namespace spinorlight
