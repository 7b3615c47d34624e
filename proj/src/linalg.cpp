#include "afmsync/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace afmsync {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double sign_like(double a, double b) { return b >= 0.0 ? std::fabs(a) : -std::fabs(a); }

void require(bool ok, const char* what) {
    if (!ok) throw Error(what);
}

// Householder reduction to upper Hessenberg form, in place.
void hessenberg_reduce(Matrix& a) {
    const std::size_t n = a.rows();
    if (n < 3) return;
    std::vector<double> v(n, 0.0);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        double scale = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) scale += std::fabs(a(i, k));
        if (scale == 0.0) continue;

        double norm2 = 0.0;
        for (std::size_t i = k + 1; i < n; ++i) {
            v[i] = a(i, k) / scale;
            norm2 += v[i] * v[i];
        }
        double beta = std::sqrt(norm2);
        if (beta == 0.0) continue;
        if (v[k + 1] > 0.0) beta = -beta; // avoid cancellation in the pivot
        const double v0 = v[k + 1];
        v[k + 1] -= beta;
        const double vtv = 2.0 * beta * (beta - v0);
        if (vtv == 0.0) continue;

        // left: rows k+1..n-1 (column k handled explicitly below)
        for (std::size_t j = k + 1; j < n; ++j) {
            double tau = 0.0;
            for (std::size_t i = k + 1; i < n; ++i) tau += v[i] * a(i, j);
            tau *= 2.0 / vtv;
            for (std::size_t i = k + 1; i < n; ++i) a(i, j) -= tau * v[i];
        }
        // right: columns k+1..n-1
        for (std::size_t i = 0; i < n; ++i) {
            double tau = 0.0;
            for (std::size_t j = k + 1; j < n; ++j) tau += a(i, j) * v[j];
            tau *= 2.0 / vtv;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= tau * v[j];
        }
        a(k + 1, k) = beta * scale;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

// Francis double-shift QR iteration on an upper Hessenberg matrix
// (EISPACK hqr lineage). Destroys `a`, fills eigenvalues by slot. The
// sweep budget is 100*n, the cap adequate for n <= 64; exceptional
// shifts fire every tenth sweep on a stuck block.
void hqr_eigenvalues(Matrix& a, std::vector<std::complex<double>>& eig) {
    const int n = static_cast<int>(a.rows());
    eig.assign(static_cast<std::size_t>(n), {0.0, 0.0});

    double anorm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::fabs(a(i, j));
    if (anorm == 0.0) return; // zero matrix: all eigenvalues zero

    const long cap = 100L * n;
    long sweeps = 0;

    int nn = n - 1;
    double t = 0.0;
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                double s = std::fabs(a(l - 1, l - 1)) + std::fabs(a(l, l));
                if (s == 0.0) s = anorm;
                if (std::fabs(a(l, l - 1)) <= kEps * s) {
                    a(l, l - 1) = 0.0;
                    break;
                }
            }
            if (l < 0) l = 0;
            double x = a(nn, nn);
            if (l == nn) {
                eig[nn--] = {x + t, 0.0};
            } else {
                double y = a(nn - 1, nn - 1);
                double w = a(nn, nn - 1) * a(nn - 1, nn);
                if (l == nn - 1) {
                    double p = 0.5 * (y - x);
                    double q = p * p + w;
                    double z = std::sqrt(std::fabs(q));
                    x += t;
                    if (q >= 0.0) { // real pair
                        z = p + sign_like(z, p);
                        eig[nn - 1] = {x + z, 0.0};
                        eig[nn] = {(z != 0.0) ? x - w / z : x + z, 0.0};
                    } else {        // complex conjugate pair
                        eig[nn - 1] = {x + p, z};
                        eig[nn] = {x + p, -z};
                    }
                    nn -= 2;
                } else {
                    if (++sweeps > cap)
                        throw ConvergenceFailure("eigenvalues_general: QR sweep cap exceeded");
                    if (its > 0 && its % 10 == 0) {
                        t += x;
                        for (int i = 0; i <= nn; ++i) a(i, i) -= x;
                        double s = std::fabs(a(nn, nn - 1)) + std::fabs(a(nn - 1, nn - 2));
                        y = x = 0.75 * s;
                        w = -0.4375 * s * s;
                    }
                    ++its;
                    double p = 0.0, q = 0.0, r = 0.0, z = 0.0;
                    int m;
                    for (m = nn - 2; m >= l; --m) {
                        z = a(m, m);
                        const double dr = x - z;
                        const double ds = y - z;
                        p = (dr * ds - w) / a(m + 1, m) + a(m, m + 1);
                        q = a(m + 1, m + 1) - z - dr - ds;
                        r = a(m + 2, m + 1);
                        const double sc = std::fabs(p) + std::fabs(q) + std::fabs(r);
                        p /= sc;
                        q /= sc;
                        r /= sc;
                        if (m == l) break;
                        const double u = std::fabs(a(m, m - 1)) * (std::fabs(q) + std::fabs(r));
                        const double v = std::fabs(p) *
                            (std::fabs(a(m - 1, m - 1)) + std::fabs(z) + std::fabs(a(m + 1, m + 1)));
                        if (u <= kEps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        a(i, i - 2) = 0.0;
                        if (i != m + 2) a(i, i - 3) = 0.0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = a(k, k - 1);
                            q = a(k + 1, k - 1);
                            r = (k != nn - 1) ? a(k + 2, k - 1) : 0.0;
                            x = std::fabs(p) + std::fabs(q) + std::fabs(r);
                            if (x != 0.0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        const double s = sign_like(std::sqrt(p * p + q * q + r * r), p);
                        if (s == 0.0) continue;
                        if (k == m) {
                            if (l != m) a(k, k - 1) = -a(k, k - 1);
                        } else {
                            a(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) { // row modification
                            p = a(k, j) + q * a(k + 1, j);
                            if (k != nn - 1) {
                                p += r * a(k + 2, j);
                                a(k + 2, j) -= p * z;
                            }
                            a(k + 1, j) -= p * y;
                            a(k, j) -= p * x;
                        }
                        const int mmin = (nn < k + 3) ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) { // column modification
                            p = x * a(i, k) + y * a(i, k + 1);
                            if (k != nn - 1) {
                                p += z * a(i, k + 2);
                                a(i, k + 2) -= p * r;
                            }
                            a(i, k + 1) -= p * q;
                            a(i, k) -= p;
                        }
                    }
                }
            }
        } while (l < nn - 1);
    }
}

} // namespace

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::trace() const {
    require(square(), "trace: matrix not square");
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double x : data_) s += x * x;
    return std::sqrt(s);
}

double Matrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::fabs(x));
    return m;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix +=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    require(rows_ == o.rows_ && cols_ == o.cols_, "matrix -=: shape mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& x : data_) x *= s;
    return *this;
}

Matrix Matrix::operator*(const Matrix& rhs) const {
    require(cols_ == rhs.rows_, "matrix *: shape mismatch");
    Matrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const double aik = (*this)(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += aik * rhs(k, j);
        }
    return out;
}

void symmetrize(Matrix& m) {
    require(m.square(), "symmetrize: matrix not square");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j) {
            const double avg = 0.5 * (m(i, j) + m(j, i));
            m(i, j) = avg;
            m(j, i) = avg;
        }
}

Spectrum eigenvalues_general(const Matrix& m) {
    require(m.square(), "eigenvalues_general: matrix not square");
    require(m.rows() >= 1 && m.rows() <= 64, "eigenvalues_general: dimension out of range");
    Matrix work = m;
    hessenberg_reduce(work);
    Spectrum sp;
    hqr_eigenvalues(work, sp.eigenvalues);
    sp.max_real_part = -std::numeric_limits<double>::infinity();
    for (const auto& ev : sp.eigenvalues) sp.max_real_part = std::max(sp.max_real_part, ev.real());
    return sp;
}

bool is_stable(const Matrix& a, double margin) {
    return eigenvalues_general(a).max_real_part < -margin;
}

Matrix solve_linear(Matrix a, Matrix rhs) {
    require(a.square(), "solve_linear: matrix not square");
    require(a.rows() == rhs.rows(), "solve_linear: rhs shape mismatch");
    const std::size_t n = a.rows();
    const std::size_t w = rhs.cols();
    const double tiny = a.max_abs() * static_cast<double>(n) * kEps;
    if (a.max_abs() == 0.0) throw SingularSolve("solve_linear: zero matrix");

    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(a(i, k)) > std::fabs(a(piv, k))) piv = i;
        if (std::fabs(a(piv, k)) <= tiny)
            throw SingularSolve("solve_linear: numerically singular pivot");
        if (piv != k) {
            for (std::size_t j = k; j < n; ++j) std::swap(a(k, j), a(piv, j));
            for (std::size_t j = 0; j < w; ++j) std::swap(rhs(k, j), rhs(piv, j));
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = a(i, k) / a(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            for (std::size_t j = 0; j < w; ++j) rhs(i, j) -= f * rhs(k, j);
        }
    }
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = 0; j < w; ++j) {
            double s = rhs(ii, j);
            for (std::size_t c = ii + 1; c < n; ++c) s -= a(ii, c) * rhs(c, j);
            rhs(ii, j) = s / a(ii, ii);
        }
    }
    return rhs;
}

CovarianceMatrix solve_lyapunov(const Matrix& a, const Matrix& d) {
    require(a.square() && d.square() && a.rows() == d.rows(),
            "solve_lyapunov: A and D must be square with equal dimension");
    if (!is_stable(a, 0.0)) throw UnstableSystem("solve_lyapunov: drift matrix is not strictly stable");

    const std::size_t n = a.rows();
    const std::size_t nn = n * n;

    // column-stacked vec: index(col j, row i) = j*n + i
    Matrix k(nn, nn);
    Matrix rhs(nn, 1);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t row = j * n + i;
            for (std::size_t c = 0; c < n; ++c) {
                k(row, j * n + c) += a(i, c); // A V
                k(row, c * n + i) += a(j, c); // V A^T
            }
            rhs(row, 0) = -d(i, j);
        }

    Matrix x = solve_linear(k, rhs);
    Matrix v(n, n);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) v(i, j) = x(j * n + i, 0);
    symmetrize(v);

    const double dnorm = d.frobenius_norm();
    const double tol = 1e-9 * dnorm;
    for (int pass = 0; pass < 3; ++pass) {
        Matrix resid = a * v + v * a.transposed() + d;
        if (resid.frobenius_norm() < tol) return CovarianceMatrix{std::move(v)};
        // one step of iterative refinement on the vectorized system
        Matrix rvec(nn, 1);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) rvec(j * n + i, 0) = -resid(i, j);
        Matrix dx = solve_linear(k, rvec);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) v(i, j) += dx(j * n + i, 0);
        symmetrize(v);
    }
    throw SingularSolve("solve_lyapunov: residual tolerance not reached");
}

std::array<double, 3> eigenvalues_symmetric3(const Matrix& m) {
    require(m.rows() == 3 && m.cols() == 3, "eigenvalues_symmetric3: matrix must be 3x3");
    const double scale = std::max(1.0, m.max_abs());
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::fabs(m(i, j) - m(j, i)) > 1e-12 * scale)
                throw Error("eigenvalues_symmetric3: matrix not symmetric to 1e-12");

    double a[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) a[i][j] = 0.5 * (m(i, j) + m(j, i));

    // cyclic Jacobi; quadratic convergence makes ~5 sweeps plenty at n = 3
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = std::sqrt(a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]);
        double diag = std::sqrt(a[0][0] * a[0][0] + a[1][1] * a[1][1] + a[2][2] * a[2][2]);
        if (off <= kEps * std::max(diag, 1e-300)) break;
        for (int p = 0; p < 2; ++p)
            for (int q = p + 1; q < 3; ++q) {
                if (a[p][q] == 0.0) continue;
                const double tau = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = sign_like(1.0, tau) / (std::fabs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const double app = a[p][p], aqq = a[q][q], apq = a[p][q];
                a[p][p] = app - t * apq;
                a[q][q] = aqq + t * apq;
                a[p][q] = a[q][p] = 0.0;
                const int r = 3 - p - q; // the remaining index
                const double arp = a[r][p], arq = a[r][q];
                a[r][p] = a[p][r] = c * arp - s * arq;
                a[r][q] = a[q][r] = s * arp + c * arq;
            }
    }
    std::array<double, 3> ev{a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
}

std::array<double, 3> symplectic_eigenvalues(const CovarianceMatrix& cm) {
    require(cm.v.rows() == 6 && cm.v.cols() == 6, "symplectic_eigenvalues: covariance must be 6x6");
    Matrix omega(6, 6);
    for (std::size_t b = 0; b < 3; ++b) {
        omega(2 * b, 2 * b + 1) = 1.0;
        omega(2 * b + 1, 2 * b) = -1.0;
    }
    const Spectrum sp = eigenvalues_general(omega * cm.v);
    std::array<double, 6> mag{};
    for (std::size_t i = 0; i < 6; ++i) mag[i] = std::abs(sp.eigenvalues[i]);
    std::sort(mag.begin(), mag.end());
    // moduli come in equal pairs (+-i nu); average each pair
    return {0.5 * (mag[0] + mag[1]), 0.5 * (mag[2] + mag[3]), 0.5 * (mag[4] + mag[5])};
}

} // namespace afmsync
