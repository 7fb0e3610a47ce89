#include "twogrid/blocksys.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "twogrid/lapack.hpp"

namespace twogrid {

BlockSystem build_block(const SparseMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("build_block: A must be square");
    const Index k = a.n_rows;
    const SparseMatrix at = transpose(a);

    SparseMatrix block;
    block.n_rows = block.n_cols = 2 * k;
    block.row_offsets.reserve(static_cast<std::size_t>(2 * k) + 1);
    block.col_indices.reserve(2 * a.values.size());
    block.values.reserve(2 * a.values.size());

    block.row_offsets.push_back(0);
    for (Index r = 0; r < k; ++r) {           // top block row: A shifted right by k
        for (Index p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p) {
            block.col_indices.push_back(a.col_indices[p] + k);
            block.values.push_back(a.values[p]);
        }
        block.row_offsets.push_back(static_cast<Index>(block.values.size()));
    }
    for (Index r = 0; r < k; ++r) {           // bottom block row: A^T in the left block
        for (Index p = at.row_offsets[r]; p < at.row_offsets[r + 1]; ++p) {
            block.col_indices.push_back(at.col_indices[p]);
            block.values.push_back(at.values[p]);
        }
        block.row_offsets.push_back(static_cast<Index>(block.values.size()));
    }

    return BlockSystem{a, std::move(block), k};
}

PairingReport verify_block_spectrum(const BlockSystem& bs, double tol, Index dense_limit) {
    if (bs.k > dense_limit)
        throw std::invalid_argument("verify_block_spectrum: k exceeds dense limit");

    const Vector eig = lapack::symmetric_eigenvalues(to_dense(bs.block));
    const Vector sigma = lapack::singular_values(to_dense(bs.a));

    std::vector<double> paired;
    paired.reserve(static_cast<std::size_t>(2 * bs.k));
    for (Index i = 0; i < bs.k; ++i) {
        paired.push_back(-sigma[i]);
        paired.push_back(sigma[i]);
    }
    std::sort(paired.begin(), paired.end());

    double max_err = 0.0;
    for (Index i = 0; i < 2 * bs.k; ++i)
        max_err = std::max(max_err, std::abs(eig[i] - paired[static_cast<std::size_t>(i)]));

    return PairingReport{max_err, max_err <= tol};
}

} // namespace twogrid
