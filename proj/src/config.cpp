#include "afmsync/config.hpp"

#include <cmath>
#include <fstream>

#include "json.hpp"

namespace afmsync {

namespace {

using nlohmann::json;

double parse_double(const std::string& key, const std::string& value) {
    std::size_t consumed = 0;
    double out = 0.0;
    try {
        out = std::stod(value, &consumed);
    } catch (const std::exception&) {
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    }
    if (consumed != value.size())
        throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
    if (!std::isfinite(out))
        throw ConfigError("config key '" + key + "': value must be finite");
    return out;
}

HUnit parse_h_unit(const std::string& value) {
    if (value == "Hsp") return HUnit::Hsp;
    if (value == "Hex") return HUnit::Hex;
    throw ConfigError("config key 'h_unit': expected 'Hsp' or 'Hex', got '" + value + "'");
}

CavityMode parse_cavity_mode(const std::string& value) {
    if (value == "bright") return CavityMode::Bright;
    if (value == "dark") return CavityMode::Dark;
    throw ConfigError("config key 'cavity_mode': expected 'bright' or 'dark', got '" + value +
                      "'");
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "h_ex") cfg.h_ex = parse_double(key, value);
    else if (key == "h_an_ratio") cfg.h_an_ratio = parse_double(key, value);
    else if (key == "h") cfg.h = parse_double(key, value);
    else if (key == "h_unit") cfg.h_unit = parse_h_unit(value);
    else if (key == "g_ab") cfg.g_ab = parse_double(key, value);
    else if (key == "g_ac") cfg.g_ac = parse_double(key, value);
    else if (key == "g_bc") cfg.g_bc = parse_double(key, value);
    else if (key == "kappa") cfg.kappa = parse_double(key, value);
    else if (key == "kappa_c") cfg.kappa_c = parse_double(key, value);
    else if (key == "omega_c_over_hsp") cfg.omega_c_over_hsp = parse_double(key, value);
    else if (key == "delta_f_over_hsp") cfg.delta_f_over_hsp = parse_double(key, value);
    else if (key == "cavity_mode") cfg.cavity_mode = parse_cavity_mode(value);
    else throw ConfigError("unknown config key '" + key + "'");
}

std::string json_scalar_to_string(const std::string& key, const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number()) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
        return buf;
    }
    throw ConfigError("config key '" + key + "': expected a number or string");
}

} // namespace

const std::vector<std::string>& known_presets() {
    static const std::vector<std::string> presets = {"fig2", "fig3", "fig4", "fig5"};
    return presets;
}

std::string to_string(Experiment e) {
    switch (e) {
        case Experiment::Sync: return "sync";
        case Experiment::Sweep: return "sweep";
        case Experiment::Dispersion: return "dispersion";
        case Experiment::Stability: return "stability";
        case Experiment::Materials: return "materials";
    }
    return "sync";
}

std::string to_string(HUnit u) { return u == HUnit::Hsp ? "Hsp" : "Hex"; }

std::string to_string(CavityMode m) { return m == CavityMode::Bright ? "bright" : "dark"; }

void RunConfig::validate() const {
    if (!(h_ex > 0.0)) throw ConfigError("config key 'h_ex': must be strictly positive");
    if (h_an_ratio < 0.0) throw ConfigError("config key 'h_an_ratio': must be non-negative");
    if (g_ab < 0.0) throw ConfigError("config key 'g_ab': must be non-negative");
    if (g_ac < 0.0) throw ConfigError("config key 'g_ac': must be non-negative");
    if (g_bc < 0.0) throw ConfigError("config key 'g_bc': must be non-negative");
    if (!(kappa > 0.0)) throw ConfigError("config key 'kappa': must be strictly positive");
    if (!(kappa_c > 0.0)) throw ConfigError("config key 'kappa_c': must be strictly positive");
    if (omega_c_over_hsp < 0.0)
        throw ConfigError("config key 'omega_c_over_hsp': must be non-negative");
}

SystemParams RunConfig::to_system_params() const {
    validate();
    SystemParams p;
    p.h_ex_a = p.h_ex_b = h_ex;
    const double h_an = h_an_ratio * h_ex;
    p.h_an_a = p.h_an_b = h_an;
    p.g_ab = g_ab;
    p.g_ac = g_ac;
    p.g_bc = g_bc;
    p.kappa_a = p.kappa_b = kappa;
    p.kappa_c = kappa_c;
    const double h_sp = std::sqrt(h_an * (h_an + 2.0 * h_ex));
    p.omega_c = omega_c_over_hsp * h_sp;
    p.delta_f = delta_f_over_hsp * h_sp;
    p.h = (h_unit == HUnit::Hsp) ? h * h_sp : h;
    p.cavity_mode = cavity_mode;
    p.validate();
    return p;
}

std::string RunConfig::to_json_text() const {
    json j;
    j["experiment"] = to_string(experiment);
    if (preset) j["preset"] = *preset;
    j["h_ex"] = h_ex;
    j["h_an_ratio"] = h_an_ratio;
    j["h"] = h;
    j["h_unit"] = to_string(h_unit);
    j["g_ab"] = g_ab;
    j["g_ac"] = g_ac;
    j["g_bc"] = g_bc;
    j["kappa"] = kappa;
    j["kappa_c"] = kappa_c;
    j["omega_c_over_hsp"] = omega_c_over_hsp;
    j["delta_f_over_hsp"] = delta_f_over_hsp;
    j["cavity_mode"] = to_string(cavity_mode);
    j["output_path"] = output_path;
    j["plot"] = plot;
    return j.dump(2);
}

RunConfig run_config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config JSON parse failure: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config JSON root must be an object");
    RunConfig cfg;
    for (const auto& [key, value] : j.items()) {
        if (key == "experiment") {
            const std::string s = value.get<std::string>();
            bool found = false;
            for (Experiment e : {Experiment::Sync, Experiment::Sweep, Experiment::Dispersion,
                                 Experiment::Stability, Experiment::Materials})
                if (to_string(e) == s) {
                    cfg.experiment = e;
                    found = true;
                }
            if (!found) throw ConfigError("config key 'experiment': unknown value '" + s + "'");
        } else if (key == "preset") {
            cfg.preset = value.get<std::string>();
        } else if (key == "output_path") {
            cfg.output_path = value.get<std::string>();
        } else if (key == "plot") {
            if (!value.is_boolean()) throw ConfigError("config key 'plot': expected a boolean");
            cfg.plot = value.get<bool>();
        } else {
            apply_key(cfg, key, json_scalar_to_string(key, value));
        }
    }
    return cfg;
}

RunConfig parse_config(const std::optional<std::string>& preset,
                       const std::optional<std::string>& config_file_path,
                       const ConfigOverlay& flag_overrides) {
    RunConfig cfg; // the member defaults are the published parameter set

    if (preset) {
        bool known = false;
        for (const std::string& p : known_presets()) known = known || p == *preset;
        if (!known) throw ConfigError("unknown preset '" + *preset + "'");
        cfg.preset = *preset;
        // every preset shares the published parameter set, which the
        // defaults already carry; presets differ in grids and routing
    }

    if (config_file_path) {
        std::ifstream in(*config_file_path);
        if (!in) throw ConfigError("cannot open config file '" + *config_file_path + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (const json::exception& e) {
            throw ConfigError("config file '" + *config_file_path + "': " + e.what());
        }
        if (!j.is_object())
            throw ConfigError("config file '" + *config_file_path + "': root must be an object");
        for (const auto& [key, value] : j.items())
            apply_key(cfg, key, json_scalar_to_string(key, value));
    }

    for (const auto& [key, value] : flag_overrides) apply_key(cfg, key, value);

    cfg.validate();
    return cfg;
}

} // namespace afmsync
