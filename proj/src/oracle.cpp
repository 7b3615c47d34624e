#include "afmsync/oracle.hpp"

#include <cmath>

namespace afmsync {

namespace {

// right-hand side of the moment equation
Matrix rate(const Matrix& a, const Matrix& at, const Matrix& d, const Matrix& v) {
    return a * v + v * at + d;
}

} // namespace

double default_step(const Matrix& a) {
    return 0.05 / std::max(1.0, a.max_abs());
}

IntegrationReport integrate_covariance(const Matrix& a, const Matrix& d,
                                       const CovarianceMatrix& v0, double dt,
                                       double t_max, double rate_tol) {
    if (!(dt > 0.0)) throw Error("integrate_covariance: dt must be positive");
    if (!(t_max > dt)) throw Error("integrate_covariance: t_max must exceed dt");
    if (!a.square() || a.rows() != d.rows() || !d.square() || v0.v.rows() != a.rows() ||
        !v0.v.square())
        throw Error("integrate_covariance: dimension mismatch");
    {
        Matrix sym_check = v0.v;
        symmetrize(sym_check);
        if ((sym_check - v0.v).max_abs() > 1e-10)
            throw Error("integrate_covariance: v0 must be symmetric");
    }

    const Matrix at = a.transposed();
    Matrix v = v0.v;
    symmetrize(v);

    IntegrationReport report;
    double t = 0.0;
    while (true) {
        Matrix k1 = rate(a, at, d, v);
        const double rn = k1.frobenius_norm();
        if (rn < rate_tol) {
            report.converged = true;
            report.final_rate_norm = rn;
            break;
        }
        if (t >= t_max) {
            report.final_rate_norm = rn;
            throw NotConverged("integrate_covariance: t_max reached above rate tolerance");
        }
        if (v.frobenius_norm() > 1e12)
            throw Diverged("integrate_covariance: |V| exceeded 1e12; drift matrix unstable");

        Matrix k2 = rate(a, at, d, v + 0.5 * dt * k1);
        Matrix k3 = rate(a, at, d, v + 0.5 * dt * k2);
        Matrix k4 = rate(a, at, d, v + dt * k3);
        k2 += k3;
        v += (dt / 6.0) * (k1 + 2.0 * k2 + k4);
        symmetrize(v);
        t += dt;
        ++report.steps;
    }
    report.v_final = CovarianceMatrix{std::move(v)};
    report.t_final = t;
    return report;
}

IntegrationReport integrate_covariance(const Matrix& a, const Matrix& d) {
    // the floor keeps a zero diffusion matrix terminable: the rate is then
    // exactly zero at the fixed point
    const double rate_tol = std::max(kOracleRateTolFactor * d.frobenius_norm(), 1e-300);
    return integrate_covariance(a, d, CovarianceMatrix{Matrix(a.rows(), a.cols())},
                                default_step(a), kOracleTMax, rate_tol);
}

} // namespace afmsync
