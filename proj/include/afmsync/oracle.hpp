#pragma once

#include "afmsync/linalg.hpp"

namespace afmsync {

/// Outcome of integrating the covariance moment equation to steady state.
struct IntegrationReport {
    CovarianceMatrix v_final;
    double t_final = 0.0;
    bool converged = false;
    double final_rate_norm = 0.0; ///< Frobenius norm of dV/dt at t_final
    std::size_t steps = 0;
};

/// Fixed integration step guaranteeing a stable explicit scheme for the
/// parameter ranges handled here: 0.05 / max(1, max |A_ij|).
double default_step(const Matrix& a);

inline constexpr double kOracleTMax = 1e6;          ///< units of 1/H_ex
inline constexpr double kOracleRateTolFactor = 1e-12; ///< times |D|_F

/// Integrates dV/dt = A V + V A^T + D with the classical fixed-step
/// fourth-order scheme, symmetrizing after every step, until the rate norm
/// drops below rate_tol or t reaches t_max. This is the independent
/// verification path for solve_lyapunov: both compute the same fixed point.
/// Throws Diverged when |V|_F exceeds 1e12 (unstable A), NotConverged when
/// t_max is reached above tolerance.
IntegrationReport integrate_covariance(const Matrix& a, const Matrix& d,
                                       const CovarianceMatrix& v0, double dt,
                                       double t_max, double rate_tol);

/// Convenience overload: v0 = 0, dt = default_step(a),
/// rate_tol = 1e-12 |D|_F, t_max = 1e6.
IntegrationReport integrate_covariance(const Matrix& a, const Matrix& d);

} // namespace afmsync
