#pragma once

#include <cstdint>
#include <vector>

#include "twogrid/types.hpp"

namespace twogrid {

// Square real sparse matrix in compressed-row storage.
//
// Invariants: col_indices strictly increasing within each row, no explicit
// zeros stored. Instances are immutable values once built; all free functions
// below are pure.
struct SparseMatrix {
    Index n_rows = 0;
    Index n_cols = 0;
    std::vector<Index> row_offsets;   // size n_rows + 1
    std::vector<Index> col_indices;   // size nnz
    std::vector<double> values;       // size nnz

    Index nnz() const { return static_cast<Index>(values.size()); }

    double coeff(Index i, Index j) const;

    bool operator==(const SparseMatrix& other) const = default;
};

struct Triplet {
    Index row;
    Index col;
    double value;
};

// Build CSR from an unordered entry list. Duplicate positions are summed;
// entries that are (or sum to) exactly zero are dropped.
SparseMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> entries);

SparseMatrix transpose(const SparseMatrix& m);

// Exact storage-level symmetry: pattern and values of m and transpose(m)
// must coincide bit for bit.
bool is_symmetric(const SparseMatrix& m);

Vector multiply(const SparseMatrix& m, const Vector& x);

DenseMatrix to_dense(const SparseMatrix& m);

} // namespace twogrid
