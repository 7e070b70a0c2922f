#pragma once

#include <stdexcept>
#include <string>

namespace aim {

class AimError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Laurent polynomial evaluated at u = 0 with negative exponents present, or a
/// ratio whose denominator vanishes.
class PoleError : public AimError {
 public:
  using AimError::AimError;
};

/// Root search on an identically zero polynomial.
class DegenerateInputError : public AimError {
 public:
  using AimError::AimError;
};

/// Bracketing root search whose endpoints do not straddle a sign change.
class BracketError : public AimError {
 public:
  using AimError::AimError;
};

/// Argument outside the domain of a closed-form relation.
class DomainError : public AimError {
 public:
  using AimError::AimError;
};

/// Power series that does not terminate at the requested degree.
class TerminationError : public AimError {
 public:
  using AimError::AimError;
};

/// Physical units requested from a reduction that carries none.
class UnitUnavailableError : public AimError {
 public:
  using AimError::AimError;
};

class QuadratureError : public AimError {
 public:
  QuadratureError(const std::string& what, double estimate, double error_estimate)
      : AimError(what), estimate_(estimate), error_estimate_(error_estimate) {}
  double estimate() const { return estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

class ParseError : public AimError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : AimError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace aim
