#pragma once

#include <stdexcept>
#include <string>

#include "kronspec/graph.hpp"

namespace kronspec {

/// Raised when an eigensolver fails to converge.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

struct SpectralDecomposition {
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // column j pairs with eigenvalues(j); orthonormal

    std::size_t dimension() const { return static_cast<std::size_t>(eigenvalues.size()); }
};

inline constexpr double kDefaultEigTol = 1e-10;

/// Full symmetric eigendecomposition (LAPACK divide-and-conquer).
/// Eigenvectors are sign-normalized: the first entry with magnitude above
/// 1e-10 is positive, so results are reproducible for a fixed input.
SpectralDecomposition sym_eig(const SymMatrix& m, double tol = kDefaultEigTol);

/// Eigenvalues only, ascending. Much cheaper than sym_eig for large matrices.
Vector sym_eigvals(const SymMatrix& m);

/// Cyclic Jacobi rotations. Converges when the off-diagonal Frobenius norm
/// drops below tol * ||m||_F; throws NumericalError after max_sweeps.
SpectralDecomposition jacobi_eig(const SymMatrix& m, double tol = kDefaultEigTol, int max_sweeps = 100);

/// Largest ||M v_j - lambda_j v_j||_2 over all pairs.
double max_residual(const SymMatrix& m, const SpectralDecomposition& eig);

/// Entry i*|v| + k of the result is u_i * v_k.
Vector kron_vec(const Vector& u, const Vector& v);

/// <x,y> / (|x| |y|). Throws std::domain_error for a zero vector.
double cosine(const Vector& x, const Vector& y);

}  // namespace kronspec
