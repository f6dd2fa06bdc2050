#pragma once

#include <stdexcept>
#include <string>

namespace spectra {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of a model or set operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDerivative : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// A piecewise-linear family was queried beyond its generated index range.
class TruncationError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Scenario or report JSON violating the schema. `pointer` is a JSON pointer
/// to the offending field.
class SchemaError : public Error {
 public:
  SchemaError(std::string pointer, const std::string& what)
      : Error(pointer + ": " + what), pointer_(std::move(pointer)) {}
  const std::string& pointer() const noexcept { return pointer_; }

 private:
  std::string pointer_;
};

/// The engine declines to produce spectral sets (hypotheses not met or
/// structure unresolved). Never a silent degradation.
class Refusal : public Error {
 public:
  using Error::Error;
};

}  // namespace spectra
