#pragma once

#include <stdexcept>
#include <string>

namespace depthlab {

// Base of every error raised by the library.
class DepthError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operands of different dimension were combined.
class DimensionError : public DepthError {
 public:
  using DepthError::DepthError;
};

// Geometrically meaningless input (zero normal, negative radius, ...).
class DegenerateInput : public DepthError {
 public:
  using DepthError::DepthError;
};

// A scalar parameter is out of its documented range.
class ParameterError : public DepthError {
 public:
  using DepthError::DepthError;
};

// An exact algorithm was asked to run beyond its enumeration budget.
class BudgetExceeded : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

// A caller-supplied function does not satisfy the contract of the operation.
class PreconditionError : public DepthError {
 public:
  using DepthError::DepthError;
};

}  // namespace depthlab
