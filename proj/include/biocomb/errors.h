#pragma once

#include <stdexcept>
#include <string>

namespace biocomb {

/// Input that violates a documented precondition (bad shapes, labels, ranges).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Leading coefficient is zero (or within 1e-10 of it) and cannot be used to normalize.
class DegenerateNormalizationError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// A computation produced a NaN or infinity.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ppv + npv - 1 is too close to zero to divide by.
class IllConditionedReferenceError : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace biocomb
