#include "twogrid/twogrid.hpp"

#include <cmath>
#include <stdexcept>

#include "twogrid/lapack.hpp"

namespace twogrid {

namespace {

Eigen::PartialPivLU<DenseMatrix> lu_or_throw(const DenseMatrix& a, const char* what) {
    Eigen::PartialPivLU<DenseMatrix> lu(a);
    if (!(lu.rcond() > 0.0) || lu.rcond() < 1e-15)
        throw numerical_error(std::string(what) + ": singular matrix");
    return lu;
}

// Cholesky factor of an SPD matrix; failure reports the argument as non-SPD.
Eigen::LLT<DenseMatrix> llt_or_throw(const DenseMatrix& a, const char* what) {
    Eigen::LLT<DenseMatrix> llt(a);
    if (llt.info() != Eigen::Success)
        throw numerical_error(std::string(what) + ": matrix is not SPD");
    return llt;
}

} // namespace

Interpolation make_interpolation(DenseMatrix p, InterpKind kind) {
    if (p.cols() < 1 || p.cols() > p.rows())
        throw std::invalid_argument("interpolation: need 1 <= n_c <= n");
    const Vector sigma = lapack::singular_values(p);
    if (sigma[sigma.size() - 1] <= 1e-10 * sigma[0])
        throw numerical_error("interpolation: columns are numerically rank deficient");
    Interpolation out;
    out.n_c = p.cols();
    out.p = std::move(p);
    out.kind = kind;
    return out;
}

Interpolation optimal_interpolation(const Spectrum& spec, Index n_c) {
    const Index n = spec.vectors.rows();
    if (n_c < 1 || n_c > n) throw std::invalid_argument("optimal_interpolation: n_c out of range");
    return make_interpolation(spec.vectors.leftCols(n_c), InterpKind::optimal);
}

Interpolation ideal_interpolation(const DenseMatrix& a, const CfSplit& split) {
    const Index n = a.rows();
    const auto nf = static_cast<Index>(split.f_indices.size());
    const auto nc = static_cast<Index>(split.c_indices.size());
    if (nf + nc != n || nf == 0 || nc == 0)
        throw std::invalid_argument("ideal_interpolation: split must partition the index set");

    DenseMatrix a_ff(nf, nf), a_fc(nf, nc);
    for (Index i = 0; i < nf; ++i) {
        for (Index j = 0; j < nf; ++j) a_ff(i, j) = a(split.f_indices[i], split.f_indices[j]);
        for (Index j = 0; j < nc; ++j) a_fc(i, j) = a(split.f_indices[i], split.c_indices[j]);
    }

    const DenseMatrix w = -lu_or_throw(a_ff, "ideal_interpolation (A_ff)").solve(a_fc);

    DenseMatrix p = DenseMatrix::Zero(n, nc);
    for (Index j = 0; j < nc; ++j) p(split.c_indices[j], j) = 1.0;
    for (Index i = 0; i < nf; ++i)
        for (Index j = 0; j < nc; ++j) p(split.f_indices[i], j) = w(i, j);
    return make_interpolation(std::move(p), InterpKind::ideal);
}

CfSplit cf_split_every_other(Index n, Index stride) {
    if (n < 2) throw std::invalid_argument("cf_split_every_other: n must be >= 2");
    if (stride < 2) throw std::invalid_argument("cf_split_every_other: stride must be >= 2");
    CfSplit split;
    for (Index i = 0; i < n; ++i) {
        if ((i + 1) % stride == 0)
            split.c_indices.push_back(i);
        else
            split.f_indices.push_back(i);
    }
    if (split.c_indices.empty() || split.f_indices.empty())
        throw std::invalid_argument("cf_split_every_other: empty C or F side");
    return split;
}

DenseMatrix coarse_operator(const DenseMatrix& a_op, const Interpolation& p, double cond_limit) {
    if (a_op.rows() != p.p.rows()) throw std::invalid_argument("coarse_operator: shape mismatch");
    DenseMatrix ac = p.p.transpose() * a_op * p.p;

    Eigen::PartialPivLU<DenseMatrix> lu(ac);
    const double rcond = lu.rcond();
    if (!(rcond > 0.0) || 1.0 / rcond > cond_limit)
        throw numerical_error("coarse_operator: P^T A P is numerically singular "
                              "(inadmissible coarse space)");
    return ac;
}

namespace {

DenseMatrix coarse_grid_correction(const DenseMatrix& a_op, const Interpolation& p) {
    const DenseMatrix ac = coarse_operator(a_op, p);
    const auto lu = lu_or_throw(ac, "two_grid_error (coarse solve)");
    return DenseMatrix::Identity(a_op.rows(), a_op.rows()) -
           p.p * lu.solve(p.p.transpose() * a_op);
}

} // namespace

DenseMatrix two_grid_error(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                           const Interpolation& p) {
    const Index n = a_op.rows();
    const DenseMatrix smoother =
        DenseMatrix::Identity(n, n) - lu_or_throw(m_sym, "two_grid_error (m_sym)").solve(a_op);
    return coarse_grid_correction(a_op, p) * smoother;
}

DenseMatrix two_grid_error_presmooth(const DenseMatrix& a_op, const DenseMatrix& m,
                                     const Interpolation& p) {
    const Index n = a_op.rows();
    const DenseMatrix smoother =
        DenseMatrix::Identity(n, n) - lu_or_throw(m, "two_grid_error_presmooth (m)").solve(a_op);
    return coarse_grid_correction(a_op, p) * smoother;
}

DenseMatrix two_grid_error_prepost(const DenseMatrix& a_op, const DenseMatrix& m,
                                   const Interpolation& p, const DenseMatrix& r) {
    const Index n = a_op.rows();
    DenseMatrix rap = r * a_op * p.p;
    const auto lu_rap = lu_or_throw(rap, "two_grid_error_prepost (RAP)");
    const DenseMatrix cgc = DenseMatrix::Identity(n, n) - p.p * lu_rap.solve(r * a_op);

    const auto lu_m = lu_or_throw(m, "two_grid_error_prepost (m)");
    const auto lu_mt = lu_or_throw(m.transpose(), "two_grid_error_prepost (m^T)");
    const DenseMatrix pre = DenseMatrix::Identity(n, n) - lu_m.solve(a_op);
    const DenseMatrix post = DenseMatrix::Identity(n, n) - lu_mt.solve(a_op);
    return post * cgc * pre;
}

DenseMatrix m_projection(const Interpolation& p, const DenseMatrix& m_sym) {
    DenseMatrix gram = p.p.transpose() * m_sym * p.p;
    Eigen::PartialPivLU<DenseMatrix> lu(gram);
    if (!(lu.rcond() > 0.0) || lu.rcond() < 1e-14)
        throw numerical_error("m_projection: P^T M P is singular in the indefinite form");
    return p.p * lu.solve(p.p.transpose() * m_sym);
}

double kappa(const Interpolation& p, const Vector& v, const DenseMatrix& a,
             const DenseMatrix& m_sym) {
    if (v.norm() == 0.0) throw std::invalid_argument("kappa: v must be nonzero");
    llt_or_throw(a, "kappa (a)");
    llt_or_throw(m_sym, "kappa (m_sym)");

    const Vector residual = v - m_projection(p, m_sym) * v;
    const double numer = residual.dot(m_sym * residual);
    const double denom = v.dot(a * v);
    return numer / denom;
}

double anorm_of_operator(const DenseMatrix& e, const DenseMatrix& a) {
    const auto eig = lapack::symmetric_eigen(0.5 * (a + a.transpose().eval()));
    if (eig.values[0] <= 0.0)
        throw numerical_error("anorm_of_operator: matrix is not SPD");

    const Vector sqrt_vals = eig.values.cwiseSqrt();
    const DenseMatrix half = eig.vectors * sqrt_vals.asDiagonal() * eig.vectors.transpose();
    const DenseMatrix half_inv =
        eig.vectors * sqrt_vals.cwiseInverse().asDiagonal() * eig.vectors.transpose();

    const Vector sigma = lapack::singular_values(half * e * half_inv);
    return sigma.size() > 0 ? sigma[0] : 0.0;
}

} // namespace twogrid
