#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace twogrid {

using DenseMatrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Numerical failure detected at runtime (singular factorization, tolerance
// violation, inadmissible coarse space, ...). Maps to exit code 1 in the CLI.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& what) : std::runtime_error(what) {}
};

// Filesystem / stream failure. Maps to exit code 3 in the CLI.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace twogrid
