#pragma once

#include <vector>

#include "afmsync/exec.hpp"
#include "afmsync/model.hpp"

namespace afmsync {

/// How the three-mode coupling matrix is diagonalized for the dispersion.
/// SymmetricDiagonalization treats it as a literal real symmetric matrix
/// (the reading that reproduces the published anticrossings).
/// BosonicMetric weights it with diag(1,-1,-1) first, the strict
/// Bogoliubov-de-Gennes convention for a basis mixing annihilation and
/// creation operators, and reports magnitudes of the real parts.
enum class DispersionScheme { SymmetricDiagonalization, BosonicMetric };

/// One field point of the dispersion: bare frequencies
/// (omega_alpha, omega_beta, omega_cavity) and the three dressed branch
/// frequencies sorted ascending. `h` is in units of the spin-flop field.
struct DispersionPoint {
    double h = 0.0;
    std::array<double, 3> bare{};
    std::array<double, 3> dressed{};
};

/// Coupling matrix of the collective modes to the selected cavity
/// resonance: [[w_alpha, 0, g_alpha_c], [0, w_beta, g_beta_c],
/// [g_alpha_c, g_beta_c, w_cavity]].
Matrix dispersion_matrix(const DerivedQuantities& dq, CavityMode mode);

/// Dressed and bare branch frequencies over an ascending grid of field
/// values given in units of the spin-flop field. Grid points are independent
/// work items.
std::vector<DispersionPoint> dispersion_sweep(
    const SystemParams& params, const std::vector<double>& h_grid_hsp, CavityMode mode,
    DispersionScheme scheme = DispersionScheme::SymmetricDiagonalization,
    ExecutionMode exec = ExecutionMode::Parallel);

/// Location and size of the avoided crossing between the beta branch and the
/// selected cavity branch.
struct AnticrossingResult {
    double h_star = 0.0; ///< field at minimum branch separation, H_ex units
    double gap = 0.0;    ///< dressed-branch separation at h_star, H_ex units
};

/// Finds the bare crossing omega_beta(h) = omega_cavity by bisection, then
/// minimizes the separation of the two hybridizing dressed branches with a
/// golden-section search (tolerance 1e-6 * h_sp). The default window is
/// h in [0, h at which omega_beta reaches zero].
/// Throws NoCrossing when omega_beta never meets the cavity frequency.
AnticrossingResult anticrossing(const SystemParams& params, CavityMode mode);
AnticrossingResult anticrossing(const SystemParams& params, CavityMode mode, double h_min,
                                double h_max);

} // namespace afmsync
