#include "afmsync/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <optional>
#include <ostream>

#include "CLI11.hpp"

#include "afmsync/bogoliubov.hpp"
#include "afmsync/config.hpp"
#include "afmsync/plot.hpp"
#include "afmsync/sweep.hpp"

namespace afmsync::cli {

namespace {

const std::vector<std::string>& param_keys() {
    static const std::vector<std::string> keys = {
        "h_ex",  "h_an_ratio", "h",       "h_unit",           "g_ab",
        "g_ac",  "g_bc",       "kappa",   "kappa_c",          "omega_c_over_hsp",
        "delta_f_over_hsp",    "cavity_mode",
    };
    return keys;
}

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_stem(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".csv")
        return path.substr(0, path.size() - 4);
    return path;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw ConfigError("cannot open output file '" + path + "'");
    return os;
}

struct CommonArgs {
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::string out_path;
    bool plot = false;
    bool serial = false;
    std::map<std::string, std::string> param_values;
    CLI::App* sub = nullptr;

    ConfigOverlay overrides() const {
        ConfigOverlay o;
        for (const std::string& key : param_keys())
            if (sub->count("--" + key) > 0) o.emplace_back(key, param_values.at(key));
        return o;
    }
    ExecutionMode exec() const {
        return serial ? ExecutionMode::Serial : ExecutionMode::Parallel;
    }
};

void add_common(CLI::App* sub, CommonArgs& c) {
    c.sub = sub;
    sub->add_option("--config", c.config_path, "JSON parameter file");
    sub->add_option("--preset", c.preset, "experiment preset: fig2, fig3, fig4, fig5");
    sub->add_option("--out", c.out_path, "output CSV path");
    sub->add_flag("--plot", c.plot, "also write SVG plots next to the CSV");
    sub->add_flag("--serial", c.serial, "run grid kernels on the serial reference path");
    for (const std::string& key : param_keys()) {
        c.param_values[key];
        sub->add_option("--" + key, c.param_values[key], "override config key " + key);
    }
}

RunConfig resolve(const CommonArgs& c, Experiment experiment) {
    RunConfig cfg = parse_config(c.preset, c.config_path, c.overrides());
    cfg.experiment = experiment;
    cfg.output_path = c.out_path;
    cfg.plot = c.plot;
    return cfg;
}

void write_sweep_outputs(const RunConfig& cfg, const std::string& csv_path,
                         const SweepSpec& spec, const std::vector<SweepRow>& rows,
                         std::ostream& out) {
    {
        std::ofstream os = open_output(csv_path);
        write_csv(os, spec, rows);
    }
    out << "wrote " << csv_path << " (" << rows.size() << " rows)\n";

    std::size_t stable = 0;
    for (const SweepRow& r : rows)
        if (r.stable_bright && r.stable_dark) ++stable;
    out << "stable cells: " << stable << "/" << rows.size() << "\n";

    if (!spec.axis2) {
        if (auto p = peak_s12(rows))
            out << "argmax S12: " << spec.axis1.param << " = " << fmt9(p->axis1)
                << " (S12 = " << fmt9(p->value) << ")\n";
        if (auto p = peak_s21(rows))
            out << "argmax S21: " << spec.axis1.param << " = " << fmt9(p->axis1)
                << " (S21 = " << fmt9(p->value) << ")\n";
        if (auto x = siso_zero_crossing(rows))
            out << "S12 = S21 crossing: " << spec.axis1.param << " = " << fmt9(*x) << "\n";
        if (cfg.plot) {
            plot::Series s12{"S12", {}, {}}, s21{"S21", {}, {}}, siso{"Siso_dB", {}, {}};
            for (const SweepRow& r : rows) {
                const double nan = std::numeric_limits<double>::quiet_NaN();
                s12.x.push_back(r.axis1);
                s12.y.push_back(r.s12 ? *r.s12 : nan);
                s21.x.push_back(r.axis1);
                s21.y.push_back(r.s21 ? *r.s21 : nan);
                siso.x.push_back(r.axis1);
                siso.y.push_back(r.s_iso ? *r.s_iso : nan);
            }
            const std::string stem = csv_stem(csv_path);
            plot::write_line_svg(stem + ".svg", "synchronization vs " + spec.axis1.param,
                                 spec.axis1.param, "S", {s12, s21});
            plot::write_line_svg(stem + "_siso.svg", "isolation vs " + spec.axis1.param,
                                 spec.axis1.param, "Siso [dB]", {siso});
            out << "wrote " << stem << ".svg, " << stem << "_siso.svg\n";
        }
        return;
    }

    // 2D summary: best cells per direction
    const std::size_t ny = spec.axis2->values.size();
    auto report_best = [&](const char* name, std::optional<double> SweepRow::* field) {
        const SweepRow* best = nullptr;
        for (const SweepRow& r : rows)
            if (r.*field && (!best || *(r.*field) > *(best->*field))) best = &r;
        if (best)
            out << "max " << name << " = " << fmt9(*(best->*field)) << " at ("
                << spec.axis1.param << " = " << fmt9(best->axis1) << ", "
                << spec.axis2->param << " = " << fmt9(*best->axis2) << ")\n";
    };
    report_best("S12", &SweepRow::s12);
    report_best("S21", &SweepRow::s21);

    if (cfg.plot) {
        const std::string stem = csv_stem(csv_path);
        auto heat = [&](const char* name, std::optional<double> SweepRow::* field) {
            std::vector<double> vals(rows.size(), std::numeric_limits<double>::quiet_NaN());
            for (std::size_t i = 0; i < rows.size(); ++i)
                if (rows[i].*field) vals[i] = *(rows[i].*field);
            (void)ny;
            plot::write_heatmap_svg(stem + "_" + name + ".svg", std::string(name),
                                    spec.axis1.param, spec.axis2->param, spec.axis1.values,
                                    spec.axis2->values, vals);
            out << "wrote " << stem << "_" << name << ".svg\n";
        };
        heat("S12", &SweepRow::s12);
        heat("S21", &SweepRow::s21);
        heat("Siso", &SweepRow::s_iso);
    }
}

int cmd_sync(const CommonArgs& c, std::ostream& out) {
    const RunConfig cfg = resolve(c, Experiment::Sync);
    const SystemParams params = cfg.to_system_params();
    const SyncResult r = nonreciprocal_pair(params);
    out << "S12 = " << (r.s12 ? fmt9(*r.s12) : "n/a")
        << (r.stable_bright ? " (stable)" : " (unstable)") << "\n";
    out << "S21 = " << (r.s21 ? fmt9(*r.s21) : "n/a")
        << (r.stable_dark ? " (stable)" : " (unstable)") << "\n";
    out << "Siso_dB = " << (r.s_iso ? fmt9(*r.s_iso) : "n/a") << "\n";
    if (!cfg.output_path.empty()) {
        SweepSpec spec;
        spec.base = params;
        spec.axis1 = {"h", {cfg.h}, cfg.h_unit == HUnit::Hsp ? AxisUnit::HSp : AxisUnit::HEx};
        const std::vector<SweepRow> rows = run_sweep(spec, c.exec());
        std::ofstream os = open_output(cfg.output_path);
        write_csv(os, spec, rows);
        out << "wrote " << cfg.output_path << "\n";
    }
    return (r.stable_bright && r.stable_dark) ? 0 : 2;
}

int cmd_stability(const CommonArgs& c, std::ostream& out) {
    const RunConfig cfg = resolve(c, Experiment::Stability);
    SystemParams params = cfg.to_system_params();
    for (CavityMode mode : {CavityMode::Bright, CavityMode::Dark}) {
        params.cavity_mode = mode;
        const DriftMatrix a = build_drift_matrix(params);
        const Spectrum sp = eigenvalues_general(a.a);
        const bool stable = sp.max_real_part < -kDefaultStabilityMargin;
        out << (mode == CavityMode::Bright ? "bright" : "dark") << ": "
            << (stable ? "stable" : "unstable")
            << " (max Re eigenvalue = " << fmt9(sp.max_real_part) << ")\n";
    }
    return 0;
}

int cmd_dispersion(const CommonArgs& c, const std::string& scheme_name, std::ostream& out) {
    const RunConfig cfg = resolve(c, Experiment::Dispersion);
    const SystemParams params = cfg.to_system_params();
    DispersionScheme scheme = DispersionScheme::SymmetricDiagonalization;
    if (scheme_name == "bosonic-metric") scheme = DispersionScheme::BosonicMetric;
    else if (scheme_name != "symmetric")
        throw ConfigError("unknown --scheme '" + scheme_name + "'");

    const std::vector<double> grid = dispersion_grid();
    const std::string csv_path = cfg.output_path.empty() ? "dispersion.csv" : cfg.output_path;
    std::ofstream os = open_output(csv_path);
    os << "mode,h_over_hsp,omega_alpha,omega_beta,omega_cavity,omega_1,omega_2,omega_3\n";
    const double h_sp = derive(params).h_sp;

    for (CavityMode mode : {CavityMode::Bright, CavityMode::Dark}) {
        const char* name = mode == CavityMode::Bright ? "bright" : "dark";
        const std::vector<DispersionPoint> points =
            dispersion_sweep(params, grid, mode, scheme, c.exec());
        for (const DispersionPoint& p : points) {
            char line[256];
            std::snprintf(line, sizeof line, "%s,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n",
                          name, p.h, p.bare[0], p.bare[1], p.bare[2], p.dressed[0],
                          p.dressed[1], p.dressed[2]);
            os << line;
        }
        try {
            const AnticrossingResult ac = anticrossing(params, mode);
            out << name << " anticrossing: h_star/H_sp = " << fmt9(ac.h_star / h_sp)
                << ", gap = " << fmt9(ac.gap) << "\n";
        } catch (const NoCrossing&) {
            out << name << " anticrossing: no crossing in the search window\n";
        }
        if (cfg.plot) {
            std::vector<plot::Series> series;
            const char* labels[3] = {"omega_1", "omega_2", "omega_3"};
            for (int b = 0; b < 3; ++b) {
                plot::Series s{labels[b], {}, {}};
                for (const DispersionPoint& p : points) {
                    s.x.push_back(p.h);
                    s.y.push_back(p.dressed[b]);
                }
                series.push_back(std::move(s));
            }
            const char* bare_labels[3] = {"omega_alpha", "omega_beta", "omega_cavity"};
            for (int b = 0; b < 3; ++b) {
                plot::Series s{bare_labels[b], {}, {}};
                for (const DispersionPoint& p : points) {
                    s.x.push_back(p.h);
                    s.y.push_back(p.bare[b]);
                }
                series.push_back(std::move(s));
            }
            const std::string path = csv_stem(csv_path) + "_" + name + ".svg";
            plot::write_line_svg(path, std::string("dispersion, ") + name + " mode", "H/H_sp",
                                 "frequency [H_ex]", series);
            out << "wrote " << path << "\n";
        }
    }
    out << "wrote " << csv_path << "\n";
    return 0;
}

int cmd_sweep(const CommonArgs& c, const std::vector<std::string>& materials,
              std::ostream& out) {
    const RunConfig cfg = resolve(c, Experiment::Sweep);
    const SystemParams base = cfg.to_system_params();
    const bool is_fig5 = cfg.preset && *cfg.preset == "fig5";
    const bool is_2d = cfg.preset && (*cfg.preset == "fig4" || *cfg.preset == "fig5");

    if (is_fig5 || !materials.empty()) {
        std::vector<MaterialPreset> mats;
        for (const std::string& name : materials.empty() ? suite_material_names() : materials)
            mats.push_back(material_by_name(name));
        const SweepSpec tmpl = coupling_field_sweep_spec(base);
        const std::vector<MaterialSweepResult> results = run_material_suite(mats, tmpl, c.exec());
        const std::string stem = csv_stem(cfg.output_path.empty() ? "materials_sweep.csv"
                                                                  : cfg.output_path);
        for (const MaterialSweepResult& r : results) {
            if (!r.error.empty()) {
                out << r.material.name << ": failed (" << r.error << ")\n";
                continue;
            }
            out << "== " << r.material.name << " ==\n";
            RunConfig sub_cfg = cfg;
            write_sweep_outputs(sub_cfg, stem + "_" + r.material.name + ".csv", r.spec, r.rows,
                                out);
        }
        return 0;
    }

    const SweepSpec spec = is_2d ? coupling_field_sweep_spec(base) : field_sweep_spec(base);
    const std::vector<SweepRow> rows = run_sweep(spec, c.exec());
    const std::string csv_path = cfg.output_path.empty() ? "sweep.csv" : cfg.output_path;
    write_sweep_outputs(cfg, csv_path, spec, rows, out);
    return 0;
}

int cmd_materials(std::ostream& out) {
    out << std::left << std::setw(10) << "material" << std::right << std::setw(10) << "H_ex(T)"
        << std::setw(12) << "H_an/H_ex" << std::setw(10) << "g/H_ex" << std::setw(12)
        << "kappa/H_ex" << std::setw(14) << "kappa_c/H_ex" << "\n";
    for (const MaterialPreset& m : builtin_materials()) {
        char line[160];
        std::snprintf(line, sizeof line, "%-10s%10.4g%12.4g%10.4g%12.4g%14.4g\n", m.name.c_str(),
                      m.h_ex_tesla, m.h_an_ratio, m.g_ratio, m.kappa_ratio, m.kappa_c_ratio);
        out << line;
    }
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"steady-state quantum synchronization of two antiferromagnet magnon modes "
                 "coupled to a two-post reentrant cavity"};
    app.require_subcommand(1);

    CommonArgs sync_args, sweep_args, disp_args, stab_args;
    std::vector<std::string> sweep_materials;
    std::string scheme = "symmetric";

    CLI::App* sync_cmd = app.add_subcommand("sync", "bright/dark synchronization at one point");
    add_common(sync_cmd, sync_args);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "parameter sweep to CSV");
    add_common(sweep_cmd, sweep_args);
    sweep_cmd->add_option("--material", sweep_materials,
                          "restrict the material suite (repeatable)");
    CLI::App* disp_cmd = app.add_subcommand("dispersion", "branch frequencies vs field");
    add_common(disp_cmd, disp_args);
    disp_cmd->add_option("--scheme", scheme, "symmetric (default) or bosonic-metric");
    CLI::App* stab_cmd = app.add_subcommand("stability", "drift-matrix stability per direction");
    add_common(stab_cmd, stab_args);
    CLI::App* mat_cmd = app.add_subcommand("materials", "list built-in material presets");

    std::vector<std::string> argv_store;
    argv_store.push_back("afmsync");
    for (const std::string& a : args) argv_store.push_back(a);
    std::vector<const char*> argv;
    for (const std::string& a : argv_store) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }

    try {
        if (sync_cmd->parsed()) return cmd_sync(sync_args, out);
        if (sweep_cmd->parsed()) return cmd_sweep(sweep_args, sweep_materials, out);
        if (disp_cmd->parsed()) return cmd_dispersion(disp_args, scheme, out);
        if (stab_cmd->parsed()) return cmd_stability(stab_args, out);
        if (mat_cmd->parsed()) return cmd_materials(out);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand selected\n";
    return 1;
}

} // namespace afmsync::cli
