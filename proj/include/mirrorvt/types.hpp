#pragma once

#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace mirrorvt {

using Vector = Eigen::VectorXd;
// Point sets are stored one point per row.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using VectorRef = Eigen::Ref<const Eigen::VectorXd>;
using MatrixRef = Eigen::Ref<const Matrix>;

class BoundaryError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace mirrorvt
