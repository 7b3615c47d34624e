#include "afmsync/model.hpp"

#include <cmath>

namespace afmsync {

namespace {
constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846; // vacuum permeability, SI
} // namespace

void SystemParams::validate() const {
    if (!(kappa_a > 0.0)) throw Error("kappa_a must be strictly positive");
    if (!(kappa_b > 0.0)) throw Error("kappa_b must be strictly positive");
    if (!(kappa_c > 0.0)) throw Error("kappa_c must be strictly positive");
    if (h_ex_a < 0.0) throw Error("h_ex_a must be non-negative");
    if (h_ex_b < 0.0) throw Error("h_ex_b must be non-negative");
    if (h_an_a < 0.0) throw Error("h_an_a must be non-negative");
    if (h_an_b < 0.0) throw Error("h_an_b must be non-negative");
    if (g_ab < 0.0) throw Error("g_ab must be non-negative");
    if (g_ac < 0.0) throw Error("g_ac must be non-negative");
    if (g_bc < 0.0) throw Error("g_bc must be non-negative");
    // omega_a + omega_b is independent of the static field
    const double mean = 0.5 * (h_ex_a + h_ex_b + h_an_a + h_an_b);
    if (!(g_ab < mean))
        throw Error("g_ab must be below (omega_a + omega_b)/2 for a real rotation angle");
}

DerivedQuantities derive(const SystemParams& p) {
    p.validate();
    DerivedQuantities dq;
    dq.omega_a = p.h_ex_b + p.h_an_a + p.h;
    dq.omega_b = p.h_ex_a + p.h_an_b - p.h;

    const double mean = 0.5 * (dq.omega_a + dq.omega_b);
    const double half_split = 0.5 * (dq.omega_a - dq.omega_b);
    const double ratio = -2.0 * p.g_ab / (dq.omega_a + dq.omega_b);
    if (!(std::fabs(ratio) < 1.0))
        throw BogoliubovDivergence("derive: |2 g_ab / (omega_a + omega_b)| >= 1");
    dq.theta = 0.5 * std::atanh(ratio);

    const double h_ex = 0.5 * (p.h_ex_a + p.h_ex_b);
    const double h_an = 0.5 * (p.h_an_a + p.h_an_b);
    dq.h_sp = std::sqrt(h_an * (h_an + 2.0 * h_ex));

    const double gap = std::sqrt(mean * mean - p.g_ab * p.g_ab);
    dq.omega_alpha = gap + half_split;
    dq.omega_beta = gap - half_split;

    const double ch = std::cosh(dq.theta);
    const double sh = std::sinh(dq.theta);
    dq.g_alpha_c = p.g_ac * ch + p.g_bc * sh;
    dq.g_beta_c = p.g_ac * sh + p.g_bc * ch;

    dq.omega_plus = p.omega_c + p.delta_f;
    dq.omega_minus = p.omega_c - p.delta_f;
    dq.cavity_frequency = (p.cavity_mode == CavityMode::Bright) ? dq.omega_plus : dq.omega_minus;
    return dq;
}

DriftMatrix build_drift_matrix(const SystemParams& p) {
    const DerivedQuantities dq = derive(p);
    const double wa = dq.omega_a, wb = dq.omega_b, wc = dq.cavity_frequency;
    const double gab = p.g_ab, gac = p.g_ac, gbc = p.g_bc;
    const double ka = p.kappa_a, kb = p.kappa_b, kc = p.kappa_c;

    // quadrature order (X_a, Y_a, X_b, Y_b, X_c, Y_c); the a-b and a-c
    // couplings are parametric, the b-c coupling is beam-splitter-like,
    // hence the sign asymmetry in rows 3 and 5
    const double rows[6][6] = {
        {-ka,  wa,   0.0,  -gab, 0.0,  -gac},
        {-wa,  -ka,  -gab, 0.0,  -gac, 0.0},
        {0.0,  -gab, -kb,  wb,   0.0,  gbc},
        {-gab, 0.0,  -wb,  -kb,  -gbc, 0.0},
        {0.0,  -gac, 0.0,  gbc,  -kc,  wc},
        {-gac, 0.0,  -gbc, 0.0,  -wc,  -kc},
    };
    DriftMatrix out{Matrix(6, 6)};
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) out.a(i, j) = rows[i][j];
    return out;
}

NoiseMatrix build_noise_matrix(const SystemParams& p) {
    p.validate();
    return NoiseMatrix{
        Matrix::diagonal({p.kappa_a, p.kappa_a, p.kappa_b, p.kappa_b, p.kappa_c, p.kappa_c})};
}

double coupling_from_geometry(double spin_magnitude, double n_spins, double volume,
                              double omega) {
    if (!(spin_magnitude > 0.0) || !(n_spins > 0.0) || !(volume > 0.0) || !(omega > 0.0))
        throw NonPositiveGeometry("coupling_from_geometry: all arguments must be positive");
    return std::sqrt(kMu0 * omega * spin_magnitude * n_spins / (2.0 * volume));
}

} // namespace afmsync
