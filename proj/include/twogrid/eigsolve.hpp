#pragma once

#include <iosfwd>
#include <vector>

#include "twogrid/types.hpp"

namespace twogrid {

// Solution of the generalized eigenproblem A_op * x = lambda * m_sym * x with
// eigenvectors normalized in the m_sym bilinear form. m_sym may be indefinite;
// norm_signs records sign(v^T m_sym v) per vector, so V^T m_sym V = diag(norm_signs).
struct Spectrum {
    std::vector<double> values;    // ascending
    DenseMatrix vectors;           // n x n, column i pairs with values[i]
    std::vector<int> norm_signs;   // +1 or -1
    double max_imag = 0.0;         // largest |Im| discarded during realification
};

struct EigOptions {
    // Eigenvalues with |Im| <= imag_tol * max|lambda| are realified; anything
    // larger is treated as a genuinely complex pencil and rejected.
    double imag_tol = 1e-8;
    // Acceptance threshold for max|V^T m_sym V - diag(norm_signs)|.
    double ortho_tol = 1e-8;
    // Sorted eigenvalues closer than gap_tol * max|lambda| form one cluster.
    double gap_tol = 1e-8;
    // |v^T m_sym v| below neutral_floor * max|m_sym| flags a neutral vector.
    double neutral_floor = 1e-10;
    // Kernel extraction must separate the cluster subspace from the rest by
    // this factor, otherwise the cluster falls back to its own span.
    double sep_safety = 10.0;
    int max_polish_sweeps = 6;
};

// Dense solve via the generalized real Schur (QZ) reduction of the pencil,
// followed by: realification of conjugate pairs, ascending sort,
// cluster-by-cluster orthonormalization in the m_sym form, and an iterative
// polish of the cross-cluster Gram residual.
//
// Throws numerical_error when the pencil is singular, an eigenvalue's
// imaginary part exceeds imag_tol, a vector is neutral in the m_sym form
// (|v^T m_sym v| below the degeneracy floor), or the final orthonormality
// residual misses ortho_tol.
Spectrum generalized_eig(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                         const EigOptions& options);
Spectrum generalized_eig(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                         double imag_tol = 1e-8);

// max-norm of V^T m_sym V - diag(norm_signs).
double orthonormality_residual(const Spectrum& spec, const DenseMatrix& m_sym);

// CSV with header "index,lambda,norm_sign".
void write_spectrum_csv(const Spectrum& spec, std::ostream& out);

} // namespace twogrid
