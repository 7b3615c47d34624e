#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "afmsync/exec.hpp"
#include "afmsync/sync.hpp"

namespace afmsync {

/// Antiferromagnet material parameters as dimensionless ratios of the
/// exchange field; h_ex_tesla is metadata only.
struct MaterialPreset {
    std::string name;
    double h_ex_tesla = 0.0;
    double h_an_ratio = 0.0;
    double g_ratio = 0.0;       ///< magnon-photon coupling / H_ex
    double kappa_ratio = 0.0;   ///< magnon damping / H_ex
    double kappa_c_ratio = 0.0; ///< cavity damping / H_ex
};

/// The four built-in materials: DPPH, MnF2, NaNiO2, NiO.
const std::vector<MaterialPreset>& builtin_materials();

/// Case-sensitive lookup; throws UnknownMaterial.
const MaterialPreset& material_by_name(const std::string& name);

/// Unit of the values carried by a sweep axis. HSp values are converted with
/// the spin-flop field of the sweep's base parameters.
enum class AxisUnit { HEx, HSp };

/// One sweep axis: a SystemParams field name and a strictly ascending grid.
struct SweepAxis {
    std::string param;
    std::vector<double> values;
    AxisUnit unit = AxisUnit::HEx;
};

/// Which result columns a sweep populates.
enum SweepOutputs : unsigned {
    kOutputS12 = 1u << 0,
    kOutputS21 = 1u << 1,
    kOutputSiso = 1u << 2,
    kOutputAll = kOutputS12 | kOutputS21 | kOutputSiso,
};

struct SweepSpec {
    SystemParams base;
    SweepAxis axis1;
    std::optional<SweepAxis> axis2;
    unsigned outputs = kOutputAll;
};

/// One grid point. Axis values are in the axis's declared unit; absent S
/// values coincide with false stability flags. `error` records a per-point
/// solver failure without aborting the sweep.
struct SweepRow {
    double axis1 = 0.0;
    std::optional<double> axis2;
    std::optional<double> s12;
    std::optional<double> s21;
    std::optional<double> s_iso;
    bool stable_bright = false;
    bool stable_dark = false;
    std::string error;
};

/// Evaluates the grid (Cartesian product when axis2 is present) in row-major
/// order over (axis1, axis2). Identical specs produce identical rows in both
/// execution modes.
std::vector<SweepRow> run_sweep(const SweepSpec& spec,
                                ExecutionMode exec = ExecutionMode::Parallel);

/// CSV with the fixed header
/// axis1_name,axis1,axis2_name,axis2,S12,S21,Siso_dB,stable_bright,stable_dark
/// Floats carry 12 significant digits; absent values are empty fields.
void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows);

struct MaterialSweepResult {
    MaterialPreset material;
    SweepSpec spec;
    std::vector<SweepRow> rows;
    std::string error; ///< non-empty when the whole material failed
};

/// Runs the template sweep once per material with that material's ratios
/// substituted into the base parameters (cavity placement is preserved as a
/// fraction of the material's spin-flop field). Per-material errors are
/// isolated.
std::vector<MaterialSweepResult> run_material_suite(
    const std::vector<MaterialPreset>& materials, const SweepSpec& sweep_template,
    ExecutionMode exec = ExecutionMode::Parallel);

/// n evenly spaced values from a to b inclusive.
std::vector<double> linspace(double a, double b, std::size_t n);

struct Peak {
    double axis1 = 0.0;
    double value = 0.0;
};

/// Discrete argmax of s12/s21 over the rows (no smoothing); absent values
/// are skipped. Empty optional when no row carries the value.
std::optional<Peak> peak_s12(const std::vector<SweepRow>& rows);
std::optional<Peak> peak_s21(const std::vector<SweepRow>& rows);

/// First sign change of s12 - s21 along axis1, located by linear
/// interpolation between the bracketing grid points.
std::optional<double> siso_zero_crossing(const std::vector<SweepRow>& rows);

// Experiment presets: the published parameter set and grids.

/// Base parameter set used throughout: symmetric sublattices,
/// H_an = 0.0163 H_ex, g_ab = H_ex, g_ac = g_bc = 0.01 H_ex,
/// kappa_c = 3 kappa = 0.003 H_ex, cavity at 0.85 H_sp with drift 0.05 H_sp.
SystemParams default_base_params();

/// 1D static-field sweep, H/H_sp in [0, 0.4] step 0.005.
SweepSpec field_sweep_spec(const SystemParams& base);

/// 2D sweep, g_ab/H_ex in [0.8, 1.0] x H/H_sp in [0, 2.0], 101 x 101.
SweepSpec coupling_field_sweep_spec(const SystemParams& base);

/// Dispersion grid, H/H_sp in [0, 0.4], 201 points.
std::vector<double> dispersion_grid();

/// Materials covered by the material-suite experiment.
std::vector<std::string> suite_material_names();

} // namespace afmsync
