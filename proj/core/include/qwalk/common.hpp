#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qwalk {

using cplx = std::complex<double>;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr double kPi = 3.14159265358979323846;

/// Invalid parameters: bad sizes, gamma <= 0, mismatched dimensions.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed or produced a result outside its tolerance.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Largest supported Hilbert-space dimension (number of nodes).
/// Defaults to 4096; WALKER_MAX_DIM overrides it at first use.
std::size_t max_dimension();

/// Overrides the dimension cap for the rest of the process (tests, CLI).
void set_max_dimension(std::size_t n);

}  // namespace qwalk
