#include "twogrid/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace twogrid {

double SparseMatrix::coeff(Index i, Index j) const {
    for (Index p = row_offsets[i]; p < row_offsets[i + 1]; ++p) {
        if (col_indices[p] == j) return values[p];
        if (col_indices[p] > j) break;
    }
    return 0.0;
}

SparseMatrix from_triplets(Index n_rows, Index n_cols, std::vector<Triplet> entries) {
    for (const auto& e : entries) {
        if (e.row < 0 || e.row >= n_rows || e.col < 0 || e.col >= n_cols)
            throw std::invalid_argument("from_triplets: entry out of range");
    }
    std::sort(entries.begin(), entries.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrix m;
    m.n_rows = n_rows;
    m.n_cols = n_cols;
    m.row_offsets.assign(static_cast<std::size_t>(n_rows) + 1, 0);
    m.col_indices.reserve(entries.size());
    m.values.reserve(entries.size());

    std::size_t i = 0;
    while (i < entries.size()) {
        const Index r = entries[i].row;
        const Index c = entries[i].col;
        double v = entries[i].value;
        ++i;
        while (i < entries.size() && entries[i].row == r && entries[i].col == c) {
            v += entries[i].value;
            ++i;
        }
        if (v != 0.0) {
            m.col_indices.push_back(c);
            m.values.push_back(v);
            ++m.row_offsets[static_cast<std::size_t>(r) + 1];
        }
    }
    for (Index r = 0; r < n_rows; ++r)
        m.row_offsets[static_cast<std::size_t>(r) + 1] += m.row_offsets[static_cast<std::size_t>(r)];
    return m;
}

SparseMatrix transpose(const SparseMatrix& m) {
    SparseMatrix t;
    t.n_rows = m.n_cols;
    t.n_cols = m.n_rows;
    t.row_offsets.assign(static_cast<std::size_t>(t.n_rows) + 1, 0);
    t.col_indices.resize(m.values.size());
    t.values.resize(m.values.size());

    for (Index p = 0; p < m.nnz(); ++p)
        ++t.row_offsets[static_cast<std::size_t>(m.col_indices[p]) + 1];
    for (Index r = 0; r < t.n_rows; ++r)
        t.row_offsets[static_cast<std::size_t>(r) + 1] += t.row_offsets[static_cast<std::size_t>(r)];

    std::vector<Index> cursor(t.row_offsets.begin(), t.row_offsets.end() - 1);
    for (Index r = 0; r < m.n_rows; ++r) {
        for (Index p = m.row_offsets[r]; p < m.row_offsets[r + 1]; ++p) {
            const Index c = m.col_indices[p];
            const Index q = cursor[static_cast<std::size_t>(c)]++;
            t.col_indices[q] = r;     // rows of m visited in order, so columns stay sorted
            t.values[q] = m.values[p];
        }
    }
    return t;
}

bool is_symmetric(const SparseMatrix& m) {
    return m.n_rows == m.n_cols && m == transpose(m);
}

Vector multiply(const SparseMatrix& m, const Vector& x) {
    if (x.size() != m.n_cols)
        throw std::invalid_argument("multiply: vector size does not match matrix columns");
    Vector y = Vector::Zero(m.n_rows);
    for (Index r = 0; r < m.n_rows; ++r) {
        double sum = 0.0;
        for (Index p = m.row_offsets[r]; p < m.row_offsets[r + 1]; ++p)
            sum += m.values[p] * x[m.col_indices[p]];
        y[r] = sum;
    }
    return y;
}

DenseMatrix to_dense(const SparseMatrix& m) {
    DenseMatrix d = DenseMatrix::Zero(m.n_rows, m.n_cols);
    for (Index r = 0; r < m.n_rows; ++r)
        for (Index p = m.row_offsets[r]; p < m.row_offsets[r + 1]; ++p)
            d(r, m.col_indices[p]) = m.values[p];
    return d;
}

} // namespace twogrid
