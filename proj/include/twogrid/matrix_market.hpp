#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twogrid/sparse_matrix.hpp"
#include "twogrid/types.hpp"

namespace twogrid {

// Matrix Market exchange format, the subset used by this project:
//   - "matrix coordinate real general" for sparse matrices,
//   - "matrix array real general" for dense matrices (column-major values).
// Comment lines (leading '%') after the banner carry free-form metadata such
// as the generating problem description.

void write_matrix_market(const SparseMatrix& m, std::ostream& out,
                         const std::vector<std::string>& comments = {});
void write_matrix_market(const SparseMatrix& m, const std::string& path,
                         const std::vector<std::string>& comments = {});

SparseMatrix read_matrix_market(std::istream& in);
SparseMatrix read_matrix_market_file(const std::string& path);

void write_matrix_market_dense(const DenseMatrix& m, std::ostream& out,
                               const std::vector<std::string>& comments = {});
void write_matrix_market_dense(const DenseMatrix& m, const std::string& path,
                               const std::vector<std::string>& comments = {});

DenseMatrix read_matrix_market_dense(std::istream& in);

} // namespace twogrid
