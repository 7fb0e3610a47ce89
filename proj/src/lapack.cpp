#include "twogrid/lapack.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include <lapacke.h>

namespace twogrid::lapack {

namespace {

// Results must be repeatable run to run; threaded BLAS reductions are the one
// source of nondeterminism in this stack, so pin them unless the user already
// chose a thread count.
__attribute__((constructor)) void pin_blas_threads() {
    ::setenv("OPENBLAS_NUM_THREADS", "1", 0);
    ::setenv("OMP_NUM_THREADS", "1", 0);
}

[[noreturn]] void fail(const char* routine, lapack_int info) {
    throw numerical_error(std::string(routine) + " failed with info=" + std::to_string(info));
}

lapack_int dim(const DenseMatrix& a, const char* routine) {
    if (a.rows() != a.cols())
        throw std::invalid_argument(std::string(routine) + ": matrix must be square");
    return static_cast<lapack_int>(a.rows());
}

} // namespace

std::vector<std::complex<double>> eigenvalues(const DenseMatrix& a) {
    const lapack_int n = dim(a, "eigenvalues");
    DenseMatrix work = a;
    std::vector<double> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    const lapack_int info =
        LAPACKE_dgeev(LAPACK_COL_MAJOR, 'N', 'N', n, work.data(), n, wr.data(), wi.data(),
                      nullptr, 1, nullptr, 1);
    if (info != 0) fail("dgeev", info);

    std::vector<std::complex<double>> values(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = {wr[i], wi[i]};
    return values;
}

GeneralizedEigen generalized_eigen(const DenseMatrix& a, const DenseMatrix& b) {
    const lapack_int n = dim(a, "generalized_eigen");
    if (b.rows() != n || b.cols() != n)
        throw std::invalid_argument("generalized_eigen: dimension mismatch");

    DenseMatrix wa = a, wb = b;
    std::vector<double> alphar(static_cast<std::size_t>(n)), alphai(static_cast<std::size_t>(n)),
        beta(static_cast<std::size_t>(n));
    DenseMatrix vr(n, n);
    const lapack_int info =
        LAPACKE_dggev(LAPACK_COL_MAJOR, 'N', 'V', n, wa.data(), n, wb.data(), n, alphar.data(),
                      alphai.data(), beta.data(), nullptr, 1, vr.data(), n);
    if (info != 0) fail("dggev", info);

    GeneralizedEigen result;
    result.values.resize(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < result.values.size(); ++i) {
        if (beta[i] == 0.0)
            throw numerical_error("generalized_eigen: singular pencil (beta = 0)");
        result.values[i] = std::complex<double>(alphar[i], alphai[i]) / beta[i];
    }
    result.right_vectors = std::move(vr);
    return result;
}

SymmetricEigen symmetric_eigen(const DenseMatrix& a) {
    const lapack_int n = dim(a, "symmetric_eigen");
    SymmetricEigen result;
    result.vectors = a;
    result.values.resize(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, result.vectors.data(), n, result.values.data());
    if (info != 0) fail("dsyevd", info);
    return result;
}

Vector symmetric_eigenvalues(const DenseMatrix& a) {
    const lapack_int n = dim(a, "symmetric_eigenvalues");
    DenseMatrix work = a;
    Vector values(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', n, work.data(), n, values.data());
    if (info != 0) fail("dsyevd", info);
    return values;
}

Vector singular_values(const DenseMatrix& a) {
    const auto m = static_cast<lapack_int>(a.rows());
    const auto n = static_cast<lapack_int>(a.cols());
    DenseMatrix work = a;
    Vector sigma(std::min(m, n));
    const lapack_int info = LAPACKE_dgesdd(LAPACK_COL_MAJOR, 'N', m, n, work.data(), m,
                                           sigma.data(), nullptr, 1, nullptr, 1);
    if (info != 0) fail("dgesdd", info);
    return sigma;
}

} // namespace twogrid::lapack
