#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "afmsync/errors.hpp"

namespace afmsync {

/// Dense real matrix, row-major. Sized for the small systems handled here
/// (n <= 64); every operation is O(n^3) or cheaper and allocates freely.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, value) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static Matrix diagonal(const std::vector<double>& d) {
        Matrix m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const;
    double trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    Matrix& operator+=(const Matrix& o);
    Matrix& operator-=(const Matrix& o);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, double s) { return a *= s; }
    friend Matrix operator*(double s, Matrix a) { return a *= s; }
    Matrix operator*(const Matrix& rhs) const;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

/// Averages a square matrix with its transpose in place.
void symmetrize(Matrix& m);

/// Complex spectrum of a real square matrix.
struct Spectrum {
    std::vector<std::complex<double>> eigenvalues;
    double max_real_part = 0.0;
};

/// Margin used to avoid classifying marginally stable systems as stable.
inline constexpr double kDefaultStabilityMargin = 1e-9;

/// All eigenvalues of a real square matrix (n <= 64) via Householder
/// Hessenberg reduction followed by Francis double-shift QR iteration.
/// Throws ConvergenceFailure if the iteration cap (100*n sweeps) is hit.
Spectrum eigenvalues_general(const Matrix& m);

/// True iff every eigenvalue of `a` has real part < -margin.
bool is_stable(const Matrix& a, double margin = kDefaultStabilityMargin);

/// Steady-state second moments of the quadrature vector; symmetric 6x6
/// for the three-mode system.
struct CovarianceMatrix {
    Matrix v;
};

/// Solves A V + V A^T = -D for the steady covariance by vectorizing to an
/// n^2 x n^2 dense system (Kronecker identity) and eliminating with partial
/// pivoting; the result is explicitly symmetrized and its residual is
/// required to satisfy |A V + V A^T + D|_F < 1e-9 |D|_F.
/// Throws UnstableSystem if `a` is not strictly stable, SingularSolve if the
/// vectorized system is numerically singular or the residual cannot be met.
CovarianceMatrix solve_lyapunov(const Matrix& a, const Matrix& d);

/// Eigenvalues of a 3x3 symmetric matrix (symmetric to 1e-12, checked) via
/// cyclic Jacobi rotations, returned ascending.
std::array<double, 3> eigenvalues_symmetric3(const Matrix& m);

/// Symplectic eigenvalues of a 6x6 covariance matrix: moduli of the
/// eigenvalue pairs of Omega*V with Omega the standard three-mode symplectic
/// form, returned ascending. Physical Gaussian states have all >= 1/2.
std::array<double, 3> symplectic_eigenvalues(const CovarianceMatrix& cm);

/// Solves a X = rhs (general square a, multiple right-hand sides) with
/// partially pivoted Gaussian elimination. Throws SingularSolve.
Matrix solve_linear(Matrix a, Matrix rhs);

} // namespace afmsync
