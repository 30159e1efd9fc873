#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace fscrit {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

// Error types. Each maps onto one failure mode named by the library contracts.
struct ChartUndefined : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroLocus : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotCritical : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotGeneric : std::domain_error {
  using std::domain_error::domain_error;
};
struct HemisphereViolation : std::domain_error {
  using std::domain_error::domain_error;
};
struct InvalidSection : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace fscrit
