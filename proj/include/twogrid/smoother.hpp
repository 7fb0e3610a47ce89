#pragma once

#include "twogrid/types.hpp"

namespace twogrid {

// Kaczmarz relaxation in matrix form, plus its symmetrizations.
//
// Writing At = A*A^T and splitting At = D + L + U into diagonal and strict
// triangles, forward Gauss-Seidel on At*y = b with the substitution x = A^T*y
// is one sweep of Kaczmarz on A*x = b. Its matrix representation is
// M = N*(A^T)^-1 with N = D + L, i.e. the update x <- x + M^-1 (b - A*x).
struct Smoother {
    DenseMatrix m;       // M
    DenseMatrix m_sym;   // symmetrized form, used for analysis
    DenseMatrix m_bar;   // preconditioner form
    DenseMatrix n_mat;   // N = D + L of A*A^T
};

// Builds M and N. Solves against a factorization of A^T column-wise; the
// inverse is never formed. Throws numerical_error when A is singular.
Smoother kaczmarz_matrix(const DenseMatrix& a);

// M~ = M^T (M^T + M - A)^-1 M, averaged with its transpose to strip
// round-off skew. Error propagator identity:
//     I - M~^-1 A = (I - M^-1 A)(I - M^-T A).
DenseMatrix symmetrize(const DenseMatrix& m, const DenseMatrix& a);

// Mbar = M (M^T + M - A)^-1 M^T; equals symmetrize(m, a) for symmetric M.
DenseMatrix precond_form(const DenseMatrix& m, const DenseMatrix& a);

struct ConvergenceReport {
    double min_eig = 0.0;
    bool ok = false;
};

// Smallest eigenvalue of the symmetric part of M + M^T - A; ok iff positive.
ConvergenceReport check_convergent(const DenseMatrix& m, const DenseMatrix& a);

// Convenience: kaczmarz_matrix with m_sym and m_bar filled in.
Smoother build_kaczmarz(const DenseMatrix& a);

} // namespace twogrid
