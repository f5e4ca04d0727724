#pragma once

#include <stdexcept>
#include <string>

namespace mrb {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : Error {
  using Error::Error;
};

struct NumericalError : Error {
  NumericalError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual(residual) {}
  double residual;
};

struct KeyError : Error {
  using Error::Error;
};

struct BudgetError : Error {
  using Error::Error;
};

struct UnsupportedError : Error {
  using Error::Error;
};

// Raised when input data violates a model invariant at load time.
struct ValidationError : Error {
  using Error::Error;
};

struct InstrumentError : Error {
  using Error::Error;
};

struct DomainError : Error {
  using Error::Error;
};

struct UnsupportedComboError : UnsupportedError {
  using UnsupportedError::UnsupportedError;
};

struct UnsupportedPatternError : UnsupportedError {
  using UnsupportedError::UnsupportedError;
};

struct ParameterError : Error {
  using Error::Error;
};

struct IngestError : Error {
  using Error::Error;
};

struct CellError : IngestError {
  using IngestError::IngestError;
};

}  // namespace mrb
