#pragma once

#include <stdexcept>
#include <string>

namespace cochlea {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Special functions.
class RangeError : public Error { using Error::Error; };
class SingularArgumentError : public Error { using Error::Error; };

// Geometry and configuration.
class GeometryError : public Error { using Error::Error; };
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& what)
      : Error("config field '" + field + "': " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Operators and solvers.
class DomainError : public Error { using Error::Error; };
class NumericalError : public Error { using Error::Error; };
class EvaluationError : public Error { using Error::Error; };
class SearchError : public Error { using Error::Error; };
class DegeneracyError : public Error { using Error::Error; };
class SolveError : public Error { using Error::Error; };
class RefinementError : public Error { using Error::Error; };
class FitError : public Error { using Error::Error; };

}  // namespace cochlea
