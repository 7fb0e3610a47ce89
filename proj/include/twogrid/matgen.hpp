#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "twogrid/sparse_matrix.hpp"
#include "twogrid/types.hpp"

namespace twogrid {

enum class ProblemKind { poisson2d, advdiff2d, random };

// Description of one test operator. Identical specs always produce
// bit-identical matrices, including the random family.
struct ProblemSpec {
    ProblemKind kind = ProblemKind::advdiff2d;

    // poisson2d / advdiff2d: interior points per dimension.
    int grid_n = 16;

    // advdiff2d only.
    double alpha = 0.1;
    std::array<double, 2> b_vec = default_advection();

    // random only.
    int n = 64;
    double density = 0.1;
    std::uint64_t seed = 1;

    static std::array<double, 2> default_advection();
};

// Throws std::invalid_argument when a field violates its constraints.
void validate(const ProblemSpec& spec);

// Standard 5-point Laplacian on a grid_n x grid_n interior grid of the unit
// square, homogeneous Dirichlet boundary, scaled 1/h^2 with h = 1/(grid_n+1).
// Row-major node ordering (x fastest). Symmetric positive definite.
SparseMatrix poisson_2d(int grid_n);

// Upwind finite-difference discretization of
//     -alpha * div(grad u) + b . grad u   on [-1,1]^2,
// homogeneous Dirichlet boundary, h = 2/(grid_n+1), row-major ordering.
// Diffusion uses the 5-point stencil scaled alpha/h^2; each advection
// component uses the first-order difference biased against its sign.
// Nonsymmetric whenever b is nonzero.
SparseMatrix advdiff_2d(int grid_n, double alpha, std::array<double, 2> b_vec);

// Sparse matrix with about density*n^2 off-diagonal entries at uniform random
// positions, values uniform on [-1,1); each diagonal entry is 1 plus the
// row's absolute off-diagonal sum, making the matrix strictly diagonally
// dominant and hence nonsingular. Deterministic in seed.
SparseMatrix random_nonsym(int n, double density, std::uint64_t seed);

SparseMatrix generate(const ProblemSpec& spec);

// Key=value rendering of the problem description, embedded as a Matrix
// Market comment.
std::string describe(const ProblemSpec& spec);

std::string to_string(ProblemKind kind);
ProblemKind problem_kind_from_string(const std::string& name);

} // namespace twogrid
