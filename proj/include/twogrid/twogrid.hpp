#pragma once

#include <vector>

#include "twogrid/eigsolve.hpp"
#include "twogrid/types.hpp"

namespace twogrid {

enum class InterpKind { optimal, ideal, custom };

// Full-column-rank interpolation operator mapping coarse corrections to the
// fine level. Rank is checked at construction (tolerance 1e-10 relative to
// the largest singular value).
struct Interpolation {
    DenseMatrix p;   // n x n_c
    InterpKind kind = InterpKind::custom;
    Index n_c = 0;
};

Interpolation make_interpolation(DenseMatrix p, InterpKind kind);

// Disjoint, exhaustive fine/coarse partition of {0, ..., n-1}.
struct CfSplit {
    std::vector<Index> f_indices;
    std::vector<Index> c_indices;
};

// Spectral interpolation: the first n_c eigenvector columns, ascending.
Interpolation optimal_interpolation(const Spectrum& spec, Index n_c);

// Classical interpolation with W = -A_ff^-1 A_fc on fine rows and the
// identity on coarse rows, assembled in the original index ordering.
Interpolation ideal_interpolation(const DenseMatrix& a, const CfSplit& split);

// C = {stride-1, 2*stride-1, ...}, F = complement. Errors if either side is empty.
CfSplit cf_split_every_other(Index n, Index stride);

// Galerkin coarse operator P^T A P. Throws numerical_error when the result is
// numerically singular (condition estimate above cond_limit), which signals
// an inadmissible coarse space for an indefinite operator.
DenseMatrix coarse_operator(const DenseMatrix& a_op, const Interpolation& p,
                            double cond_limit = 1e14);

// One-sided propagator with the symmetrized smoother:
//     E = (I - P (P^T A P)^-1 P^T A)(I - m_sym^-1 A).
DenseMatrix two_grid_error(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                           const Interpolation& p);

// One-sided propagator with a single plain smoothing sweep:
//     E = (I - P (P^T A P)^-1 P^T A)(I - m^-1 A).
// For SPD A this is the operator whose squared A-norm the two-grid theory
// pins down.
DenseMatrix two_grid_error_presmooth(const DenseMatrix& a_op, const DenseMatrix& m,
                                     const Interpolation& p);

// Pre- and post-smoothed propagator with restriction r:
//     E = (I - m^-T A)(I - P (r A P)^-1 r A)(I - m^-1 A).
DenseMatrix two_grid_error_prepost(const DenseMatrix& a_op, const DenseMatrix& m,
                                   const Interpolation& p, const DenseMatrix& r);

// Projection onto range(P) orthogonal in the m_sym form:
//     P (P^T m_sym P)^-1 P^T m_sym.
DenseMatrix m_projection(const Interpolation& p, const DenseMatrix& m_sym);

// Weak-approximation ratio  ||(I - m_projection(P)) v||^2_{m_sym} / ||v||^2_a
// for SPD a and m_sym.
double kappa(const Interpolation& p, const Vector& v, const DenseMatrix& a,
             const DenseMatrix& m_sym);

// Operator norm of e in the energy norm of SPD a: the largest singular value
// of a^{1/2} e a^{-1/2}.
double anorm_of_operator(const DenseMatrix& e, const DenseMatrix& a);

} // namespace twogrid
