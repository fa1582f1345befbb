#pragma once

/// \file
/// Exception hierarchy shared by every roegen module.
///
/// Errors fall into three families that the command-line tool maps onto
/// distinct exit codes: input problems (configuration, arguments, domain),
/// numerical problems (convergence, degenerate or supercritical states) and
/// I/O problems.

#include <stdexcept>
#include <string>

namespace roegen {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- input family -------------------------------------------------------

class InputError : public Error {
 public:
  using Error::Error;
};

/// A state outside the equation of state's domain (e.g. Q <= b).
class DomainError : public InputError {
 public:
  using InputError::InputError;
};

class ArgumentError : public InputError {
 public:
  using InputError::InputError;
};

/// A query outside the computed stability range of a diagram.
class RangeError : public InputError {
 public:
  using InputError::InputError;
};

class LookupError : public InputError {
 public:
  using InputError::InputError;
};

class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

class ParseError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class UnknownKeyError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

class ValidationError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// ---- numerical family ---------------------------------------------------

class NumericalError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class UnsupportedModelError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SupercriticalError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoCoexistenceError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegeneratePointError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Raised by build_diagram; the message names the failing stage.
class BuildError : public NumericalError {
 public:
  BuildError(std::string stage, const std::string& what)
      : NumericalError("diagram build failed at stage '" + stage + "': " + what),
        stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

class RenderError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

// ---- I/O family ---------------------------------------------------------

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace roegen
