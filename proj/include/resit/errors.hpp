#pragma once

#include <stdexcept>
#include <string>

namespace resit {

/// Invalid argument supplied to a sampler, model spec or configuration.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A score estimator could not be evaluated on its input
/// (constant input, too few samples, zero scale).
class EstimatorError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Least-squares fit is degenerate (regressor has zero variance).
class RegressionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace resit
