#pragma once

#include "afmsync/linalg.hpp"

namespace afmsync {

/// The two reentrant-cavity resonances selected by the relative direction of
/// the post currents: Bright sits at omega_c + delta_f, Dark at
/// omega_c - delta_f.
enum class CavityMode { Bright, Dark };

/// Physical inputs of the three-mode model. Every frequency and rate is
/// stored in units of the exchange field H_ex; field-configuration files may
/// express the static field in units of the spin-flop field instead and are
/// converted before this struct is built.
struct SystemParams {
    double h_ex_a = 1.0;   ///< exchange field acting on sublattice a
    double h_ex_b = 1.0;   ///< exchange field acting on sublattice b
    double h_an_a = 0.0163; ///< anisotropy field, sublattice a
    double h_an_b = 0.0163; ///< anisotropy field, sublattice b
    double h = 0.0;        ///< external static field
    double g_ab = 1.0;     ///< magnon-magnon coupling
    double g_ac = 0.01;    ///< magnon a - photon coupling
    double g_bc = 0.01;    ///< magnon b - photon coupling
    double kappa_a = 0.001;
    double kappa_b = 0.001;
    double kappa_c = 0.003;
    double omega_c = 0.0;  ///< average cavity frequency
    double delta_f = 0.0;  ///< cavity drift frequency
    CavityMode cavity_mode = CavityMode::Bright;

    /// Throws Error naming the offending field when an invariant is violated.
    void validate() const;
};

/// Frequencies and couplings implied by SystemParams.
struct DerivedQuantities {
    double omega_a = 0.0;
    double omega_b = 0.0;
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double h_sp = 0.0;             ///< spin-flop field sqrt(H_an (H_an + 2 H_ex))
    double theta = 0.0;            ///< two-mode hyperbolic rotation angle
    double omega_alpha = 0.0;
    double omega_beta = 0.0;
    double g_alpha_c = 0.0;
    double g_beta_c = 0.0;
    double cavity_frequency = 0.0; ///< omega_plus or omega_minus per cavity_mode
};

/// 6x6 generator of the linearized quadrature dynamics, row/column order
/// (X_a, Y_a, X_b, Y_b, X_c, Y_c).
struct DriftMatrix {
    Matrix a;
};

/// Diffusion matrix of the vacuum input noise, diagonal
/// (kappa_a, kappa_a, kappa_b, kappa_b, kappa_c, kappa_c).
struct NoiseMatrix {
    Matrix d;
};

/// Derives magnon frequencies, the spin-flop field, the hyperbolic rotation
/// angle and the collective-mode frequencies/couplings.
/// Throws BogoliubovDivergence when g_ab >= (omega_a + omega_b)/2.
DerivedQuantities derive(const SystemParams& params);

DriftMatrix build_drift_matrix(const SystemParams& params);

NoiseMatrix build_noise_matrix(const SystemParams& params);

/// Magnon-photon coupling from sample geometry:
/// sqrt(mu0 * omega * spin_magnitude * n_spins / (2 * volume)).
/// Throws NonPositiveGeometry on non-positive inputs.
double coupling_from_geometry(double spin_magnitude, double n_spins, double volume,
                              double omega);

} // namespace afmsync
