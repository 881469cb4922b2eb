#include "kronspec/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <lapacke.h>

namespace kronspec {

namespace {

void normalize_signs(Matrix& v) {
    for (Eigen::Index j = 0; j < v.cols(); ++j) {
        for (Eigen::Index i = 0; i < v.rows(); ++i) {
            if (std::abs(v(i, j)) > 1e-10) {
                if (v(i, j) < 0) v.col(j) = -v.col(j);
                break;
            }
        }
    }
}

Matrix checked_copy(const SymMatrix& m) {
    Matrix a = m.matrix();
    if (!a.allFinite()) throw NumericalError("eigensolver input contains non-finite entries", NAN);
    return a;
}

}  // namespace

SpectralDecomposition sym_eig(const SymMatrix& m, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("sym_eig: tol must be positive");
    const auto n = static_cast<lapack_int>(m.dimension());
    SpectralDecomposition out;
    out.eigenvectors = checked_copy(m);
    out.eigenvalues.resize(n);
    if (n == 0) return out;
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'U', n, out.eigenvectors.data(), n,
                                           out.eigenvalues.data());
    if (info != 0) {
        throw NumericalError("sym_eig: LAPACK dsyevd failed with info = " + std::to_string(info),
                             static_cast<double>(info));
    }
    normalize_signs(out.eigenvectors);
    return out;
}

Vector sym_eigvals(const SymMatrix& m) {
    const auto n = static_cast<lapack_int>(m.dimension());
    Matrix a = checked_copy(m);
    Vector w(n);
    if (n == 0) return w;
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n, w.data());
    if (info != 0) {
        throw NumericalError("sym_eigvals: LAPACK dsyevd failed with info = " + std::to_string(info),
                             static_cast<double>(info));
    }
    return w;
}

SpectralDecomposition jacobi_eig(const SymMatrix& m, double tol, int max_sweeps) {
    if (!(tol > 0.0)) throw std::invalid_argument("jacobi_eig: tol must be positive");
    Matrix a = checked_copy(m);
    const Eigen::Index n = a.rows();
    Matrix v = Matrix::Identity(n, n);
    const double scale = a.norm();
    auto off_norm = [&] {
        double s = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = i + 1; j < n; ++j) s += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(s);
    };

    double off = off_norm();
    int sweep = 0;
    while (off > tol * scale) {
        if (sweep++ >= max_sweeps) {
            throw NumericalError("jacobi_eig: no convergence after " + std::to_string(max_sweeps) +
                                     " sweeps (off-diagonal norm " + std::to_string(off) + ")",
                                 off);
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                // Rotation angle that annihilates a(p,q) (Golub & Van Loan 8.5.2).
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
        off = off_norm();
    }

    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) < a(j, j); });
    SpectralDecomposition out;
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        out.eigenvalues(k) = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]);
        out.eigenvectors.col(k) = v.col(order[static_cast<std::size_t>(k)]);
    }
    normalize_signs(out.eigenvectors);
    return out;
}

double max_residual(const SymMatrix& m, const SpectralDecomposition& eig) {
    const Matrix r = m.matrix() * eig.eigenvectors - eig.eigenvectors * eig.eigenvalues.asDiagonal();
    return r.colwise().norm().maxCoeff();
}

Vector kron_vec(const Vector& u, const Vector& v) {
    Vector out(u.size() * v.size());
    for (Eigen::Index i = 0; i < u.size(); ++i) out.segment(i * v.size(), v.size()) = u(i) * v;
    return out;
}

double cosine(const Vector& x, const Vector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("cosine: vectors differ in length");
    const double nx = x.norm(), ny = y.norm();
    if (nx == 0.0 || ny == 0.0) throw std::domain_error("cosine: zero vector");
    return std::clamp(x.dot(y) / (nx * ny), -1.0, 1.0);
}

}  // namespace kronspec
