#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace loggas::numerics {

// Minimal dense containers; this library only needs eigenvalues of symmetric
// and Hermitian matrices plus small positive-definite solves, so no general
// linear-algebra dependency is pulled in.
struct RealMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // row-major, n*n

    RealMatrix() = default;
    explicit RealMatrix(std::size_t dim) : n(dim), a(dim * dim, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct ComplexMatrix {
    std::size_t n = 0;
    std::vector<std::complex<double>> a;

    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim) : n(dim), a(dim * dim) {}

    std::complex<double>& at(std::size_t i, std::size_t j) { return a[i * n + j]; }
    const std::complex<double>& at(std::size_t i, std::size_t j) const {
        return a[i * n + j];
    }
};

// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal
// and off-diagonal (offdiag.size() == diag.size() - 1), ascending. Implicit
// shift QL, eigenvalues only. Throws ConvergenceError if an off-diagonal
// entry fails to deflate within the iteration budget.
std::vector<double> symtri_eigenvalues(std::span<const double> diag,
                                       std::span<const double> offdiag);

// Eigenvalues of a dense symmetric matrix, ascending. Householder reduction
// to tridiagonal followed by QL. Symmetry of the input is the caller's
// contract; only the lower triangle is read.
std::vector<double> symmetric_eigenvalues(const RealMatrix& m);

// Eigenvalues of a dense Hermitian matrix, ascending. Validates Hermitian
// symmetry, embeds as the 2n x 2n real symmetric [[Re, -Im], [Im, Re]] whose
// spectrum is each eigenvalue doubled, and returns one copy of each pair.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// In-place Cholesky of a symmetric positive definite matrix (lower triangle).
// Returns false if a pivot is not strictly positive.
bool cholesky_factor(RealMatrix& m);

// Solve L L^T x = b given the factor from cholesky_factor.
std::vector<double> cholesky_solve(const RealMatrix& chol, std::span<const double> b);

}  // namespace loggas::numerics
