#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace vvrf {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

// Two fields (or a field and a coefficient block) were combined with
// incompatible grid sizes.
class DimensionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A grid size outside the supported family (powers of two).
class SizingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid configuration values (also used by the CLI for bad config files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failure: solver blow-up, undefined risks, domain violations.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Time-stepping produced a non-finite state; message names the step.
class StabilityError : public NumericError {
 public:
  using NumericError::NumericError;
};

// A materialized table would exceed the configured memory budget.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline bool isPowerOfTwo(Index p) { return p > 0 && (p & (p - 1)) == 0; }

}  // namespace vvrf
