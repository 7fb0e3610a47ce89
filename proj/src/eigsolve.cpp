#include "twogrid/eigsolve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "twogrid/lapack.hpp"

namespace twogrid {

namespace {

struct Candidate {
    double value = 0.0;
    bool from_complex_pair = false;
};

// Columns of a candidate eigenbasis for one cluster, M-orthonormalized by
// diagonalizing the small Gram matrix B^T m_sym B. Returns the scaled columns
// with the Gram eigenvalues' signs, ordered positive-first.
struct ClusterBasis {
    DenseMatrix columns;
    std::vector<int> signs;
};

ClusterBasis orthonormalize_in_form(const DenseMatrix& basis, const DenseMatrix& m_sym,
                                    double neutral_floor, double m_scale) {
    DenseMatrix gram = basis.transpose() * m_sym * basis;
    gram = 0.5 * (gram + gram.transpose().eval());
    const auto ge = lapack::symmetric_eigen(gram);

    const Index m = basis.cols();
    std::vector<Index> order(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) {
        return ge.values[a] > ge.values[b];   // positive signs first, deterministic
    });

    ClusterBasis out;
    out.columns.resize(basis.rows(), m);
    out.signs.resize(static_cast<std::size_t>(m));
    for (Index t = 0; t < m; ++t) {
        const double mu = ge.values[order[static_cast<std::size_t>(t)]];
        if (std::abs(mu) < neutral_floor * m_scale)
            throw numerical_error(
                "generalized_eig: neutral direction in eigenvalue cluster "
                "(|v^T M v| below degeneracy floor)");
        out.columns.col(t) = basis * ge.vectors.col(order[static_cast<std::size_t>(t)]) /
                             std::sqrt(std::abs(mu));
        out.signs[static_cast<std::size_t>(t)] = mu > 0.0 ? 1 : -1;
    }
    return out;
}

} // namespace

Spectrum generalized_eig(const DenseMatrix& a_op, const DenseMatrix& m_sym,
                         const EigOptions& opt) {
    if (a_op.rows() != a_op.cols()) throw std::invalid_argument("generalized_eig: A not square");
    if (m_sym.rows() != a_op.rows() || m_sym.cols() != a_op.cols())
        throw std::invalid_argument("generalized_eig: shape mismatch");

    const Index n = a_op.rows();
    const auto raw = lapack::generalized_eigen(a_op, m_sym);

    double scale = 0.0;
    double max_imag = 0.0;
    for (const auto& z : raw.values) {
        scale = std::max(scale, std::abs(z));
        max_imag = std::max(max_imag, std::abs(z.imag()));
    }
    if (scale == 0.0) scale = 1.0;
    if (max_imag > opt.imag_tol * scale) {
        char buf[160];
        std::snprintf(buf, sizeof(buf),
                      "generalized_eig: eigenvalue imaginary part %.3e exceeds tolerance %.3e "
                      "(pencil spectrum is not real)",
                      max_imag, opt.imag_tol * scale);
        throw numerical_error(buf);
    }

    // Realify. The packed output already stores a conjugate pair as its real
    // part followed by its imaginary part, which span the pair's real
    // invariant plane; copying columns as-is realifies everything. A zero
    // imaginary column (pair collapsed to a real vector) falls back to the
    // partner so the rank repair below can take over.
    std::vector<Candidate> cand(static_cast<std::size_t>(n));
    DenseMatrix basis(n, n);
    for (Index j = 0; j < n; ++j) {
        cand[static_cast<std::size_t>(j)].value = raw.values[static_cast<std::size_t>(j)].real();
        cand[static_cast<std::size_t>(j)].from_complex_pair =
            raw.values[static_cast<std::size_t>(j)].imag() != 0.0;
        basis.col(j) = raw.right_vectors.col(j);
        if (cand[static_cast<std::size_t>(j)].from_complex_pair && j > 0 &&
            raw.values[static_cast<std::size_t>(j)].imag() < 0.0 && basis.col(j).norm() == 0.0)
            basis.col(j) = raw.right_vectors.col(j - 1);
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return cand[a].value < cand[b].value; });

    std::vector<double> values(static_cast<std::size_t>(n));
    std::vector<char> complex_flag(static_cast<std::size_t>(n));
    DenseMatrix w(n, n);
    for (Index t = 0; t < n; ++t) {
        const auto& c = cand[static_cast<std::size_t>(order[static_cast<std::size_t>(t)])];
        values[static_cast<std::size_t>(t)] = c.value;
        complex_flag[static_cast<std::size_t>(t)] = c.from_complex_pair ? 1 : 0;
        const Vector col = basis.col(order[static_cast<std::size_t>(t)]);
        const double norm = col.norm();
        if (norm == 0.0) throw numerical_error("generalized_eig: zero eigenvector column");
        w.col(t) = col / norm;
    }

    const double m_scale = m_sym.cwiseAbs().maxCoeff();

    DenseMatrix vectors = w;
    std::vector<int> signs(static_cast<std::size_t>(n), 0);

    Index lo = 0;
    while (lo < n) {
        Index hi = lo + 1;
        while (hi < n && values[static_cast<std::size_t>(hi)] -
                                 values[static_cast<std::size_t>(hi) - 1] <=
                             opt.gap_tol * scale)
            ++hi;
        const Index m = hi - lo;

        if (m == 1) {
            const Vector v = w.col(lo);
            const double s = v.dot(m_sym * v);
            if (std::abs(s) < opt.neutral_floor * m_scale)
                throw numerical_error(
                    "generalized_eig: neutral eigenvector of a simple eigenvalue "
                    "(|v^T M v| below degeneracy floor)");
            signs[static_cast<std::size_t>(lo)] = s > 0.0 ? 1 : -1;
            vectors.col(lo) = v / std::sqrt(std::abs(s));
            lo = hi;
            continue;
        }

        const bool has_complex =
            std::any_of(complex_flag.begin() + lo, complex_flag.begin() + hi,
                        [](char f) { return f != 0; });

        DenseMatrix cluster_basis;
        bool rayleigh_refresh = false;

        if (has_complex) {
            // Realified complex pairs: the cluster's own columns already span
            // the right invariant subspace; a symmetric kernel extraction at
            // the (real) mean would be contaminated by neighbors.
            Eigen::HouseholderQR<DenseMatrix> qr(w.middleCols(lo, m));
            const Vector diag = qr.matrixQR().diagonal().head(m).cwiseAbs();
            if (diag.minCoeff() > 1e-6)
                cluster_basis = DenseMatrix(qr.householderQ()) .leftCols(m);
        }
        if (cluster_basis.size() == 0) {
            // Invariant subspace of a (numerically) multiple real eigenvalue:
            // the near-kernel of the symmetric matrix A - lambda*M.
            const double lambda_bar =
                std::accumulate(values.begin() + lo, values.begin() + hi, 0.0) / double(m);
            const auto ke = lapack::symmetric_eigen(a_op - lambda_bar * m_sym);

            std::vector<Index> by_mag(static_cast<std::size_t>(n));
            std::iota(by_mag.begin(), by_mag.end(), Index{0});
            std::sort(by_mag.begin(), by_mag.end(), [&](Index a, Index b) {
                return std::abs(ke.values[a]) < std::abs(ke.values[b]);
            });
            const double sep_in = std::abs(ke.values[by_mag[static_cast<std::size_t>(m) - 1]]);
            const double sep_out =
                m < n ? std::abs(ke.values[by_mag[static_cast<std::size_t>(m)]]) : 0.0;

            if (m == n || sep_out > opt.sep_safety * std::max(sep_in, 1e-300)) {
                cluster_basis.resize(n, m);
                for (Index t = 0; t < m; ++t)
                    cluster_basis.col(t) = ke.vectors.col(by_mag[static_cast<std::size_t>(t)]);
                rayleigh_refresh = true;
            } else {
                Eigen::HouseholderQR<DenseMatrix> qr(w.middleCols(lo, m));
                cluster_basis = DenseMatrix(qr.householderQ()).leftCols(m);
            }
        }

        ClusterBasis ortho =
            orthonormalize_in_form(cluster_basis, m_sym, opt.neutral_floor, m_scale);
        for (Index t = 0; t < m; ++t) {
            vectors.col(lo + t) = ortho.columns.col(t);
            signs[static_cast<std::size_t>(lo + t)] = ortho.signs[static_cast<std::size_t>(t)];
            if (rayleigh_refresh) {
                const Vector v = ortho.columns.col(t);
                values[static_cast<std::size_t>(lo + t)] =
                    v.dot(a_op * v) / v.dot(m_sym * v);
            }
        }
        lo = hi;
    }

    // Rayleigh refreshes may reorder inside former clusters.
    std::vector<Index> final_order(static_cast<std::size_t>(n));
    std::iota(final_order.begin(), final_order.end(), Index{0});
    std::stable_sort(final_order.begin(), final_order.end(), [&](Index a, Index b) {
        return values[static_cast<std::size_t>(a)] < values[static_cast<std::size_t>(b)];
    });

    Spectrum spec;
    spec.values.resize(static_cast<std::size_t>(n));
    spec.norm_signs.resize(static_cast<std::size_t>(n));
    spec.vectors.resize(n, n);
    spec.max_imag = max_imag;
    for (Index t = 0; t < n; ++t) {
        const Index src = final_order[static_cast<std::size_t>(t)];
        spec.values[static_cast<std::size_t>(t)] = values[static_cast<std::size_t>(src)];
        spec.norm_signs[static_cast<std::size_t>(t)] = signs[static_cast<std::size_t>(src)];
        spec.vectors.col(t) = vectors.col(src);
    }

    // Cross-cluster cleanup: with S = diag(signs) and E = V^T M V - S, the
    // update V <- V (I - S E / 2) cancels E to second order while moving each
    // vector only toward form-adjacent ones.
    Vector sign_vec(n);
    for (Index i = 0; i < n; ++i) sign_vec[i] = spec.norm_signs[static_cast<std::size_t>(i)];
    for (int sweep = 0; sweep < opt.max_polish_sweeps; ++sweep) {
        DenseMatrix gram = spec.vectors.transpose() * m_sym * spec.vectors;
        gram = 0.5 * (gram + gram.transpose().eval());
        DenseMatrix deviation = gram;
        deviation.diagonal() -= sign_vec;
        if (deviation.cwiseAbs().maxCoeff() <= 1e-11) break;
        spec.vectors -= 0.5 * spec.vectors * (sign_vec.asDiagonal() * deviation);
    }

    const double resid = orthonormality_residual(spec, m_sym);
    if (resid > opt.ortho_tol) {
        char buf[128];
        std::snprintf(buf, sizeof(buf),
                      "generalized_eig: orthonormality residual %.3e exceeds tolerance %.3e",
                      resid, opt.ortho_tol);
        throw numerical_error(buf);
    }
    return spec;
}

Spectrum generalized_eig(const DenseMatrix& a_op, const DenseMatrix& m_sym, double imag_tol) {
    EigOptions opt;
    opt.imag_tol = imag_tol;
    return generalized_eig(a_op, m_sym, opt);
}

double orthonormality_residual(const Spectrum& spec, const DenseMatrix& m_sym) {
    if (spec.vectors.rows() != m_sym.rows())
        throw std::invalid_argument("orthonormality_residual: shape mismatch");
    DenseMatrix gram = spec.vectors.transpose() * m_sym * spec.vectors;
    for (Index i = 0; i < gram.rows(); ++i)
        gram(i, i) -= spec.norm_signs[static_cast<std::size_t>(i)];
    return gram.cwiseAbs().maxCoeff();
}

void write_spectrum_csv(const Spectrum& spec, std::ostream& out) {
    out << "index,lambda,norm_sign\n";
    char buf[64];
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%zu,%.17g,%d\n", i, spec.values[i], spec.norm_signs[i]);
        out << buf;
    }
}

} // namespace twogrid
