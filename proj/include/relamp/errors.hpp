#pragma once

#include <stdexcept>
#include <string>

namespace relamp {

/// Base class for all library errors. Carries the module that raised it and
/// the parameter at fault so the CLI can report both.
class Error : public std::runtime_error {
 public:
  Error(std::string module, std::string parameter, const std::string& what)
      : std::runtime_error(module + ": " + parameter + ": " + what),
        module_(std::move(module)),
        parameter_(std::move(parameter)) {}

  const std::string& module() const noexcept { return module_; }
  const std::string& parameter() const noexcept { return parameter_; }

 private:
  std::string module_;
  std::string parameter_;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Input data that is structurally wrong (non-finite samples, mismatched
/// grids, unnormalized packets, bad configuration values).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Series or quadrature that failed to converge.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Two independent computations of the same quantity disagreed.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

}  // namespace relamp
