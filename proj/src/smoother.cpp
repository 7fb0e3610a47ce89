#include "twogrid/smoother.hpp"

#include <stdexcept>

#include "twogrid/lapack.hpp"

namespace twogrid {

namespace {

Eigen::PartialPivLU<DenseMatrix> checked_lu(const DenseMatrix& a, const char* what) {
    Eigen::PartialPivLU<DenseMatrix> lu(a);
    if (!(lu.rcond() > 0.0) || lu.rcond() < 1e-15)
        throw numerical_error(std::string(what) + ": matrix is singular to working precision");
    return lu;
}

// The symmetrized forms are symmetric exactly when A is; averaging away
// anything beyond round-off skew would silently change the operator.
DenseMatrix strip_skew(DenseMatrix result, const char* what) {
    const double skew = (result - result.transpose()).norm();
    if (skew > 1e-8 * result.norm())
        throw numerical_error(std::string(what) +
                              ": result is not symmetric; the symmetrized forms require a "
                              "symmetric operator A");
    return 0.5 * (result + result.transpose().eval());
}

} // namespace

Smoother kaczmarz_matrix(const DenseMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("kaczmarz_matrix: A must be square");

    const DenseMatrix at_prod = a * a.transpose();
    DenseMatrix n_mat = at_prod.triangularView<Eigen::Lower>();

    // M = N (A^T)^-1  <=>  A M^T = N^T; one factorization serves all columns,
    // no inverse is ever formed.
    const auto lu = checked_lu(a, "kaczmarz_matrix");
    DenseMatrix m = lu.solve(n_mat.transpose()).transpose();

    Smoother s;
    s.m = std::move(m);
    s.n_mat = std::move(n_mat);
    return s;
}

DenseMatrix symmetrize(const DenseMatrix& m, const DenseMatrix& a) {
    const DenseMatrix k = m.transpose() + m - a;
    const auto lu = checked_lu(k, "symmetrize");
    return strip_skew(m.transpose() * lu.solve(m), "symmetrize");
}

DenseMatrix precond_form(const DenseMatrix& m, const DenseMatrix& a) {
    const DenseMatrix k = m.transpose() + m - a;
    const auto lu = checked_lu(k, "precond_form");
    return strip_skew(m * lu.solve(m.transpose()), "precond_form");
}

ConvergenceReport check_convergent(const DenseMatrix& m, const DenseMatrix& a) {
    const DenseMatrix k = m.transpose() + m - a;
    const DenseMatrix sym = 0.5 * (k + k.transpose());
    const Vector eig = lapack::symmetric_eigenvalues(sym);
    return ConvergenceReport{eig[0], eig[0] > 0.0};
}

Smoother build_kaczmarz(const DenseMatrix& a) {
    Smoother s = kaczmarz_matrix(a);
    s.m_sym = symmetrize(s.m, a);
    s.m_bar = precond_form(s.m, a);
    return s;
}

} // namespace twogrid
