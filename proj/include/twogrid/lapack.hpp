#pragma once

#include <complex>
#include <vector>

#include "twogrid/types.hpp"

namespace twogrid::lapack {

// Thin wrappers around the LAPACKE dense drivers used in this project.
// All inputs are copied (LAPACK works in place); matrices are column-major,
// matching Eigen's default layout.

// Eigenvalues of a general real square matrix (dgeev, no vectors).
std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a);

// Generalized eigenproblem a*x = lambda*b*x for a general real pencil
// (dggev). Right eigenvectors are returned in LAPACK's packed real form: a
// real eigenvalue owns one column; a complex-conjugate pair (lambda_j,
// lambda_{j+1} = conj(lambda_j)) owns two columns holding the real and
// imaginary parts of the eigenvector for lambda_j.
struct GeneralizedEigen {
    std::vector<std::complex<double>> values;
    DenseMatrix right_vectors;
};
GeneralizedEigen generalized_eigen(const DenseMatrix& a, const DenseMatrix& b);

// Full eigendecomposition of a symmetric matrix (dsyevd); values ascending.
struct SymmetricEigen {
    Vector values;
    DenseMatrix vectors;
};
SymmetricEigen symmetric_eigen(const DenseMatrix& a);

Vector symmetric_eigenvalues(const DenseMatrix& a);

// Singular values, descending (dgesdd, no vectors).
Vector singular_values(const DenseMatrix& a);

} // namespace twogrid::lapack
