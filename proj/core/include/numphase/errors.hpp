#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace numphase {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition on an argument was not met (index out of range, s outside
// its admissible interval, grid too coarse, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A constructed or loaded object violates a structural invariant
// (Hermiticity, trace, positivity, normalization, finiteness).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Quadrature on the supplied grid is too coarse or too narrow for the input.
class QuadratureError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Malformed text input (JSON, CSV, CLI descriptor).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Non-fatal findings collected by operations that only warn.
struct Diagnostics {
  std::vector<std::string> warnings;
};

}  // namespace numphase
