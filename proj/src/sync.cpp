#include "afmsync/sync.hpp"

#include <cmath>

namespace afmsync {

double sync_degree(const CovarianceMatrix& v) {
    if (v.v.rows() != 6 || v.v.cols() != 6)
        throw Error("sync_degree: covariance must be 6x6");
    // difference quadratures of the two magnon modes
    const double x_minus_var = 0.5 * (v.v(0, 0) + v.v(2, 2) - 2.0 * v.v(0, 2));
    const double y_minus_var = 0.5 * (v.v(1, 1) + v.v(3, 3) - 2.0 * v.v(1, 3));
    const double total = x_minus_var + y_minus_var;
    if (!(total > 0.0))
        throw UnphysicalCovariance("sync_degree: non-positive difference variance");
    const double s = 1.0 / total;
    if (s > 1.0 + 1e-8)
        throw UnphysicalCovariance("sync_degree: S exceeds the Heisenberg bound");
    return s;
}

double sir(double s12, double s21) {
    if (!(s12 > 0.0) || !(s21 > 0.0))
        throw ZeroSyncDegree("sir: both synchronization degrees must be strictly positive");
    const double ratio = std::max(std::fabs(s12 / s21), std::fabs(s21 / s12));
    return 20.0 * std::log10(ratio);
}

SyncResult nonreciprocal_pair(const SystemParams& params, PairDetail* detail) {
    params.validate();
    SyncResult result;

    auto run_direction = [&params](CavityMode mode, std::optional<double>& s_out, bool& stable,
                                   std::optional<CovarianceMatrix>* v_out) {
        SystemParams p = params;
        p.cavity_mode = mode;
        try {
            const DriftMatrix a = build_drift_matrix(p);
            const NoiseMatrix d = build_noise_matrix(p);
            stable = is_stable(a.a);
            if (!stable) return;
            CovarianceMatrix v = solve_lyapunov(a.a, d.d);
            s_out = sync_degree(v);
            if (v_out) *v_out = std::move(v);
        } catch (const Error&) {
            stable = false;
            s_out.reset();
        }
    };

    run_direction(CavityMode::Bright, result.s12, result.stable_bright,
                  detail ? &detail->v_bright : nullptr);
    run_direction(CavityMode::Dark, result.s21, result.stable_dark,
                  detail ? &detail->v_dark : nullptr);

    if (result.s12 && result.s21) result.s_iso = sir(*result.s12, *result.s21);
    return result;
}

} // namespace afmsync
