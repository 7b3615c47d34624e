#include "afmsync/sweep.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <ostream>

namespace afmsync {

namespace {

std::string fmt12(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

double* field_ref(SystemParams& p, const std::string& name) {
    if (name == "h") return &p.h;
    if (name == "g_ab") return &p.g_ab;
    if (name == "g_ac") return &p.g_ac;
    if (name == "g_bc") return &p.g_bc;
    if (name == "h_ex_a") return &p.h_ex_a;
    if (name == "h_ex_b") return &p.h_ex_b;
    if (name == "h_an_a") return &p.h_an_a;
    if (name == "h_an_b") return &p.h_an_b;
    if (name == "kappa_a") return &p.kappa_a;
    if (name == "kappa_b") return &p.kappa_b;
    if (name == "kappa_c") return &p.kappa_c;
    if (name == "omega_c") return &p.omega_c;
    if (name == "delta_f") return &p.delta_f;
    return nullptr;
}

void validate_axis(const SweepAxis& axis, const char* which) {
    SystemParams probe;
    if (!field_ref(probe, axis.param))
        throw Error(std::string(which) + ": unknown parameter '" + axis.param + "'");
    if (axis.values.empty()) throw Error(std::string(which) + ": grid must be non-empty");
    for (std::size_t i = 1; i < axis.values.size(); ++i)
        if (!(axis.values[i] > axis.values[i - 1]))
            throw Error(std::string(which) + ": grid must be strictly ascending");
}

std::string axis_label(const SweepAxis& axis) {
    return axis.unit == AxisUnit::HSp ? axis.param + "_over_hsp" : axis.param;
}

SweepRow evaluate_cell(const SweepSpec& spec, double h_sp, double v1,
                       std::optional<double> v2) {
    SweepRow row;
    row.axis1 = v1;
    row.axis2 = v2;
    SystemParams p = spec.base;
    *field_ref(p, spec.axis1.param) =
        v1 * (spec.axis1.unit == AxisUnit::HSp ? h_sp : 1.0);
    if (v2)
        *field_ref(p, spec.axis2->param) =
            *v2 * (spec.axis2->unit == AxisUnit::HSp ? h_sp : 1.0);
    try {
        const SyncResult r = nonreciprocal_pair(p);
        if (spec.outputs & kOutputS12) {
            row.s12 = r.s12;
            row.stable_bright = r.stable_bright;
        }
        if (spec.outputs & kOutputS21) {
            row.s21 = r.s21;
            row.stable_dark = r.stable_dark;
        }
        if (spec.outputs & kOutputSiso) row.s_iso = r.s_iso;
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

} // namespace

const std::vector<MaterialPreset>& builtin_materials() {
    static const std::vector<MaterialPreset> materials = {
        {"DPPH", 1.73, 1.8e-2, 8e-4, 1.05e-5, 6.12e-4},
        {"MnF2", 51.5, 1.63e-2, 1e-3, 9.7e-6, 6e-4},
        {"NaNiO2", 4.8, 7.3e-2, 1.2e-2, 1e-3, 5e-3},
        {"NiO", 524.0, 2.8e-3, 3e-4, 5e-4, 1e-4},
    };
    return materials;
}

const MaterialPreset& material_by_name(const std::string& name) {
    for (const MaterialPreset& m : builtin_materials())
        if (m.name == name) return m;
    throw UnknownMaterial("unknown material '" + name + "'");
}

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n == 0) throw Error("linspace: n must be positive");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = a;
        return v;
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, ExecutionMode exec) {
    validate_axis(spec.axis1, "run_sweep axis1");
    if (spec.axis2) {
        validate_axis(*spec.axis2, "run_sweep axis2");
        if (spec.axis2->param == spec.axis1.param)
            throw Error("run_sweep: axis1 and axis2 must name different parameters");
    }
    const double h_sp = derive(spec.base).h_sp;

    const std::size_t n1 = spec.axis1.values.size();
    const std::size_t n2 = spec.axis2 ? spec.axis2->values.size() : 1;
    std::vector<SweepRow> rows(n1 * n2);
    std::exception_ptr first_error;
    const long total = static_cast<long>(n1 * n2);
#pragma omp parallel for schedule(static) if (exec == ExecutionMode::Parallel)
    for (long idx = 0; idx < total; ++idx) {
        try {
            const std::size_t i1 = static_cast<std::size_t>(idx) / n2;
            const std::size_t i2 = static_cast<std::size_t>(idx) % n2;
            std::optional<double> v2;
            if (spec.axis2) v2 = spec.axis2->values[i2];
            rows[idx] = evaluate_cell(spec, h_sp, spec.axis1.values[i1], v2);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return rows;
}

void write_csv(std::ostream& os, const SweepSpec& spec, const std::vector<SweepRow>& rows) {
    os << "axis1_name,axis1,axis2_name,axis2,S12,S21,Siso_dB,stable_bright,stable_dark\n";
    const std::string label1 = axis_label(spec.axis1);
    const std::string label2 = spec.axis2 ? axis_label(*spec.axis2) : std::string();
    for (const SweepRow& row : rows) {
        os << label1 << ',' << fmt12(row.axis1) << ',';
        if (row.axis2)
            os << label2 << ',' << fmt12(*row.axis2);
        else
            os << ',';
        os << ',' << (row.s12 ? fmt12(*row.s12) : std::string()) << ','
           << (row.s21 ? fmt12(*row.s21) : std::string()) << ','
           << (row.s_iso ? fmt12(*row.s_iso) : std::string()) << ','
           << (row.stable_bright ? "true" : "false") << ','
           << (row.stable_dark ? "true" : "false") << '\n';
    }
}

std::vector<MaterialSweepResult> run_material_suite(const std::vector<MaterialPreset>& materials,
                                                    const SweepSpec& sweep_template,
                                                    ExecutionMode exec) {
    std::vector<MaterialSweepResult> results;
    results.reserve(materials.size());
    for (const MaterialPreset& m : materials) {
        MaterialSweepResult r;
        r.material = m;
        try {
            if (!(m.h_an_ratio > 0.0 && m.h_an_ratio < 1.0) ||
                !(m.g_ratio > 0.0 && m.g_ratio < 1.0) ||
                !(m.kappa_ratio > 0.0 && m.kappa_ratio < 1.0) ||
                !(m.kappa_c_ratio > 0.0 && m.kappa_c_ratio < 1.0))
                throw Error("material '" + m.name + "': ratios must lie in (0, 1)");

            SweepSpec spec = sweep_template;
            SystemParams& b = spec.base;
            const double h_ex = 0.5 * (b.h_ex_a + b.h_ex_b);
            const double h_sp_old = derive(b).h_sp;
            const double wc_ratio = b.omega_c / h_sp_old;
            const double df_ratio = b.delta_f / h_sp_old;

            b.h_an_a = b.h_an_b = m.h_an_ratio * h_ex;
            b.g_ac = b.g_bc = m.g_ratio * h_ex;
            b.kappa_a = b.kappa_b = m.kappa_ratio * h_ex;
            b.kappa_c = m.kappa_c_ratio * h_ex;

            const double h_sp_new = derive(b).h_sp;
            b.omega_c = wc_ratio * h_sp_new;
            b.delta_f = df_ratio * h_sp_new;

            r.spec = spec;
            r.rows = run_sweep(spec, exec);
        } catch (const Error& e) {
            r.error = e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

namespace {

std::optional<Peak> peak_of(const std::vector<SweepRow>& rows,
                            std::optional<double> SweepRow::* field) {
    std::optional<Peak> best;
    for (const SweepRow& row : rows) {
        const std::optional<double>& v = row.*field;
        if (!v) continue;
        if (!best || *v > best->value) best = Peak{row.axis1, *v};
    }
    return best;
}

} // namespace

std::optional<Peak> peak_s12(const std::vector<SweepRow>& rows) {
    return peak_of(rows, &SweepRow::s12);
}

std::optional<Peak> peak_s21(const std::vector<SweepRow>& rows) {
    return peak_of(rows, &SweepRow::s21);
}

std::optional<double> siso_zero_crossing(const std::vector<SweepRow>& rows) {
    bool have_prev = false;
    double prev_x = 0.0, prev_d = 0.0;
    for (const SweepRow& row : rows) {
        if (!row.s12 || !row.s21) {
            have_prev = false;
            continue;
        }
        const double d = *row.s12 - *row.s21;
        if (d == 0.0) return row.axis1;
        if (have_prev && prev_d * d < 0.0)
            return prev_x + (row.axis1 - prev_x) * prev_d / (prev_d - d);
        have_prev = true;
        prev_x = row.axis1;
        prev_d = d;
    }
    return std::nullopt;
}

SystemParams default_base_params() {
    SystemParams p; // the member defaults carry the coupling/damping set
    const double h_sp = derive(p).h_sp;
    p.omega_c = 0.85 * h_sp;
    p.delta_f = 0.05 * h_sp;
    return p;
}

SweepSpec field_sweep_spec(const SystemParams& base) {
    SweepSpec spec;
    spec.base = base;
    spec.axis1 = {"h", linspace(0.0, 0.4, 81), AxisUnit::HSp};
    return spec;
}

SweepSpec coupling_field_sweep_spec(const SystemParams& base) {
    SweepSpec spec;
    spec.base = base;
    spec.axis1 = {"g_ab", linspace(0.8, 1.0, 101), AxisUnit::HEx};
    spec.axis2 = SweepAxis{"h", linspace(0.0, 2.0, 101), AxisUnit::HSp};
    return spec;
}

std::vector<double> dispersion_grid() { return linspace(0.0, 0.4, 201); }

std::vector<std::string> suite_material_names() { return {"DPPH", "MnF2", "NaNiO2"}; }

} // namespace afmsync
