#pragma once

#include <stdexcept>
#include <string>

namespace splasmon {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A field would acquire a k = 0 component, or an index is out of range.
class ModeError : public Error {
 public:
  using Error::Error;
};

/// Fields of different resolution were combined.
class ResolutionMismatch : public Error {
 public:
  using Error::Error;
};

/// A plus-type or minus-type field was given content of the wrong sign.
class TypeViolation : public Error {
 public:
  using Error::Error;
};

/// Invalid physical or numerical parameters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Raised when the integration produces non-finite values or exceeds the
/// amplitude ceiling. Carries the time at which the failure was detected.
class BlowUpError : public Error {
 public:
  BlowUpError(double tau, const std::string& what)
      : Error(what), tau_(tau) {}
  double tau() const noexcept { return tau_; }

 private:
  double tau_;
};

}  // namespace splasmon
