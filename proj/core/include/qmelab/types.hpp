// types.hpp — Shared aliases and error types

#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qmelab {

using cd = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

// Raised on invalid inputs to library operations (bad dimensions, bad parameters).
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Raised when a numerical procedure fails to reach its target accuracy
// (quadrature non-convergence, eigensolver failure, degenerate kernels, ...).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when a run configuration fails schema validation.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qmelab
