#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "afmsync/model.hpp"

namespace afmsync {

enum class Experiment { Sync, Sweep, Dispersion, Stability, Materials };

/// Unit tag for the static-field input.
enum class HUnit { Hsp, Hex };

/// Fully resolved run configuration. The parameter fields mirror the
/// configuration-file schema exactly; to_system_params() converts them to
/// the internal H_ex-unit representation.
struct RunConfig {
    Experiment experiment = Experiment::Sync;
    std::optional<std::string> preset; // fig2, fig3, fig4, fig5

    double h_ex = 1.0;
    double h_an_ratio = 0.0163;
    double h = 0.0;
    HUnit h_unit = HUnit::Hsp;
    double g_ab = 1.0;
    double g_ac = 0.01;
    double g_bc = 0.01;
    double kappa = 0.001;
    double kappa_c = 0.003;
    double omega_c_over_hsp = 0.85;
    double delta_f_over_hsp = 0.05;
    CavityMode cavity_mode = CavityMode::Bright;

    std::string output_path;
    bool plot = false;

    /// Throws ConfigError naming the offending key.
    void validate() const;

    /// Converts to the internal representation (everything in H_ex units).
    SystemParams to_system_params() const;

    std::string to_json_text() const;
};

/// Inverse of RunConfig::to_json_text; a resolved config survives the
/// round trip unchanged.
RunConfig run_config_from_json_text(const std::string& text);

/// One configuration source: ordered (key, raw value) pairs.
using ConfigOverlay = std::vector<std::pair<std::string, std::string>>;

/// Resolves a configuration with precedence
/// flags > file > preset defaults > global defaults (the published
/// parameter set). The file is a JSON object restricted to the parameter
/// keys (h_ex, h_an_ratio, h, h_unit, g_ab, g_ac, g_bc, kappa, kappa_c,
/// omega_c_over_hsp, delta_f_over_hsp, cavity_mode).
/// Throws ConfigError naming the offending key or file.
RunConfig parse_config(const std::optional<std::string>& preset,
                       const std::optional<std::string>& config_file_path,
                       const ConfigOverlay& flag_overrides);

const std::vector<std::string>& known_presets();

std::string to_string(Experiment e);
std::string to_string(HUnit u);
std::string to_string(CavityMode m);

} // namespace afmsync
