#pragma once

#include <stdexcept>
#include <string>

namespace zenolab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand shapes do not fit the operation (mismatched or non-square).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A value violates a documented invariant (non-Hermitian state, |eta| > 1,
/// coherent tail beyond budget, ...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// Malformed experiment configuration. `field()` names the offending key in
/// `section.key` form.
class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace zenolab
