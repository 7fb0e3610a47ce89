#pragma once

// Independent reference computations for the test suite. Everything here
// deliberately avoids the library's own solver paths: eigenproblems go
// through Eigen's SelfAdjointEigenSolver instead of LAPACK wrappers, and the
// Kaczmarz sweep is written as literal row actions.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "twogrid/types.hpp"

namespace oracles {

using twogrid::DenseMatrix;
using twogrid::Index;
using twogrid::Vector;

// Eigenvalues of the 5-point Laplacian on a g x g unit-square interior grid:
//   (4 - 2cos(i*pi*h) - 2cos(j*pi*h)) / h^2,  h = 1/(g+1),  i,j = 1..g.
inline std::vector<double> poisson_eigenvalues(int g) {
    const double h = 1.0 / (g + 1);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(g) * g);
    for (int i = 1; i <= g; ++i)
        for (int j = 1; j <= g; ++j)
            values.push_back((4.0 - 2.0 * std::cos(i * M_PI * h) - 2.0 * std::cos(j * M_PI * h)) /
                             (h * h));
    std::sort(values.begin(), values.end());
    return values;
}

// Generalized symmetric-definite pencil A x = lambda M x with SPD M, reduced
// by the Cholesky factor of M. Returns ascending eigenvalues.
struct SymPencil {
    Vector values;
    DenseMatrix vectors;   // M-orthonormal columns
};

inline SymPencil sym_pencil_eig(const DenseMatrix& a, const DenseMatrix& m) {
    const Eigen::LLT<DenseMatrix> llt(m);
    const DenseMatrix l = llt.matrixL();
    const DenseMatrix reduced =
        l.triangularView<Eigen::Lower>().solve(
            l.triangularView<Eigen::Lower>().solve(a.transpose()).transpose());
    const Eigen::SelfAdjointEigenSolver<DenseMatrix> es(0.5 * (reduced + reduced.transpose()));
    SymPencil out;
    out.values = es.eigenvalues();
    out.vectors = l.transpose().triangularView<Eigen::Upper>().solve(es.eigenvectors());
    return out;
}

inline Vector sym_eigenvalues(const DenseMatrix& a) {
    return Eigen::SelfAdjointEigenSolver<DenseMatrix>(0.5 * (a + a.transpose())).eigenvalues();
}

inline Vector singular_values(const DenseMatrix& a) {
    return Eigen::JacobiSVD<DenseMatrix>(a).singularValues();
}

// One forward Gauss-Seidel sweep on (A A^T) y = b expressed row by row, with
// the iterate carried as x = A^T y.
inline Vector kaczmarz_sweep_rows(const DenseMatrix& a, const Vector& x0, const Vector& b) {
    const DenseMatrix normal = a * a.transpose();
    Vector y = Eigen::PartialPivLU<DenseMatrix>(a.transpose()).solve(x0);
    for (Index i = 0; i < a.rows(); ++i)
        y[i] += (b[i] - normal.row(i).dot(y)) / normal(i, i);
    return a.transpose() * y;
}

// Minimal XML well-formedness check: every opened tag closes in order.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        const std::size_t end = text.find('>', i);
        if (end == std::string::npos) return false;
        std::string tag = text.substr(i + 1, end - i - 1);
        i = end + 1;
        if (tag.empty()) return false;
        if (tag[0] == '?' || tag[0] == '!') continue;          // declaration / comment
        if (tag.back() == '/') continue;                       // self-closing
        if (tag[0] == '/') {
            const std::string name = tag.substr(1);
            if (stack.empty() || stack.back() != name) return false;
            stack.pop_back();
            continue;
        }
        const std::size_t space = tag.find_first_of(" \t\n");
        stack.push_back(space == std::string::npos ? tag : tag.substr(0, space));
    }
    return stack.empty();
}

} // namespace oracles
