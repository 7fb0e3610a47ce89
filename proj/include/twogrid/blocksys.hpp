#pragma once

#include "twogrid/sparse_matrix.hpp"
#include "twogrid/types.hpp"

namespace twogrid {

// 2x2 block pairing of a square operator A with its transpose:
//
//     block = [ 0    A ]
//             [ A^T  0 ]
//
// block is symmetric of dimension 2k; its eigenvalues are the singular values
// of A with both signs.
struct BlockSystem {
    SparseMatrix a;
    SparseMatrix block;
    Index k = 0;
};

BlockSystem build_block(const SparseMatrix& a);

struct PairingReport {
    double max_pairing_error = 0.0;
    bool ok = false;
};

// Dense check that sorted eig(block) equals the multiset {+sigma_i, -sigma_i}
// of A's singular values; ok iff the maximum absolute difference is <= tol.
// Guarded by dense_limit on k.
PairingReport verify_block_spectrum(const BlockSystem& bs, double tol, Index dense_limit = 1024);

} // namespace twogrid
