#include "afmsync/bogoliubov.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace afmsync {

namespace {

std::array<double, 3> dressed_frequencies(const Matrix& m, DispersionScheme scheme) {
    if (scheme == DispersionScheme::SymmetricDiagonalization)
        return eigenvalues_symmetric3(m);
    // weight with the bosonic metric diag(1,-1,-1) and fold the negative
    // branches back onto positive frequencies
    Matrix g = m;
    for (std::size_t j = 0; j < 3; ++j) {
        g(1, j) = -g(1, j);
        g(2, j) = -g(2, j);
    }
    const Spectrum sp = eigenvalues_general(g);
    std::array<double, 3> out{};
    for (std::size_t i = 0; i < 3; ++i) out[i] = std::fabs(sp.eigenvalues[i].real());
    std::sort(out.begin(), out.end());
    return out;
}

DispersionPoint evaluate_point(const SystemParams& base, double h_sp, double h_hsp,
                               CavityMode mode, DispersionScheme scheme) {
    SystemParams p = base;
    p.h = h_hsp * h_sp;
    p.cavity_mode = mode;
    const DerivedQuantities dq = derive(p);
    DispersionPoint pt;
    pt.h = h_hsp;
    pt.bare = {dq.omega_alpha, dq.omega_beta, dq.cavity_frequency};
    pt.dressed = dressed_frequencies(dispersion_matrix(dq, mode), scheme);
    return pt;
}

} // namespace

Matrix dispersion_matrix(const DerivedQuantities& dq, CavityMode mode) {
    const double wc = (mode == CavityMode::Bright) ? dq.omega_plus : dq.omega_minus;
    Matrix m(3, 3);
    m(0, 0) = dq.omega_alpha;
    m(1, 1) = dq.omega_beta;
    m(2, 2) = wc;
    m(0, 2) = m(2, 0) = dq.g_alpha_c;
    m(1, 2) = m(2, 1) = dq.g_beta_c;
    return m;
}

std::vector<DispersionPoint> dispersion_sweep(const SystemParams& params,
                                              const std::vector<double>& h_grid_hsp,
                                              CavityMode mode, DispersionScheme scheme,
                                              ExecutionMode exec) {
    if (h_grid_hsp.empty()) throw Error("dispersion_sweep: grid must be non-empty");
    for (std::size_t i = 1; i < h_grid_hsp.size(); ++i)
        if (!(h_grid_hsp[i] > h_grid_hsp[i - 1]))
            throw Error("dispersion_sweep: grid must be strictly ascending");
    const double h_sp = derive(params).h_sp;

    std::vector<DispersionPoint> points(h_grid_hsp.size());
    std::exception_ptr first_error;
    const long total = static_cast<long>(h_grid_hsp.size());
#pragma omp parallel for schedule(static) if (exec == ExecutionMode::Parallel)
    for (long i = 0; i < total; ++i) {
        try {
            points[i] = evaluate_point(params, h_sp, h_grid_hsp[i], mode, scheme);
        } catch (...) {
#pragma omp critical
            if (!first_error) first_error = std::current_exception();
        }
    }
    if (first_error) std::rethrow_exception(first_error);
    return points;
}

AnticrossingResult anticrossing(const SystemParams& params, CavityMode mode) {
    const DerivedQuantities dq = derive(params);
    // omega_beta falls linearly with h (slope -1); the window closes where
    // it reaches zero
    const double h_window_end = dq.omega_beta + params.h;
    if (!(h_window_end > 0.0))
        throw NoCrossing("anticrossing: beta branch is negative over the whole window");
    return anticrossing(params, mode, 0.0, h_window_end);
}

AnticrossingResult anticrossing(const SystemParams& params, CavityMode mode, double h_min,
                                double h_max) {
    if (!(h_max > h_min)) throw Error("anticrossing: empty search window");
    const double h_sp = derive(params).h_sp;

    auto derived_at = [&](double h) {
        SystemParams p = params;
        p.h = h;
        p.cavity_mode = mode;
        return derive(p);
    };
    auto detuning = [&](double h) {
        const DerivedQuantities dq = derived_at(h);
        return dq.omega_beta - dq.cavity_frequency;
    };

    double lo = h_min, hi = h_max;
    double f_lo = detuning(lo), f_hi = detuning(hi);
    if (f_lo * f_hi > 0.0)
        throw NoCrossing("anticrossing: omega_beta does not meet the cavity branch in the window");
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * std::max(1.0, std::fabs(hi)); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = detuning(mid);
        if (f_lo * f_mid <= 0.0) {
            hi = mid;
            f_hi = f_mid;
        } else {
            lo = mid;
            f_lo = f_mid;
        }
    }
    const double h_bare = 0.5 * (lo + hi);

    auto dressed_at = [&](double h) {
        const DerivedQuantities dq = derived_at(h);
        return eigenvalues_symmetric3(dispersion_matrix(dq, mode));
    };

    // the hybridizing branches are the adjacent pair closest at the bare
    // crossing; the third (far-detuned) branch only shifts them slightly
    const std::array<double, 3> at_bare = dressed_at(h_bare);
    const std::size_t pair =
        (at_bare[1] - at_bare[0] <= at_bare[2] - at_bare[1]) ? 0 : 1;
    auto gap_at = [&](double h) {
        const std::array<double, 3> ev = dressed_at(h);
        return ev[pair + 1] - ev[pair];
    };

    const DerivedQuantities dq_bare = derived_at(h_bare);
    const double width = std::max(10.0 * std::fabs(dq_bare.g_beta_c), 0.01 * h_sp);
    double a = std::max(h_min, h_bare - width);
    double b = std::min(h_max, h_bare + width);

    const double tol = 1e-6 * h_sp;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = gap_at(c), fd = gap_at(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = gap_at(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = gap_at(d);
        }
    }
    AnticrossingResult result;
    result.h_star = 0.5 * (a + b);
    result.gap = gap_at(result.h_star);
    return result;
}

} // namespace afmsync
