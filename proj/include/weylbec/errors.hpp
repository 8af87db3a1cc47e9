#ifndef WEYLBEC_ERRORS_HPP
#define WEYLBEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace weylbec {

/// Malformed input: expression text, config values, unusable parameters.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public ConfigError {
 public:
  ParseError(const std::string& what, std::size_t position)
      : ConfigError(what + " (at position " + std::to_string(position) + ")"),
        position(position) {}
  std::size_t position;
};

/// A numerical procedure could not complete or its result is untrustworthy.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NewtonDiverged : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DegenerateJacobian : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GapClosed : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonIntegerResidual : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ZeroA : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class GapViolation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class LocalizationAmbiguous : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TrackingLost : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NonTransversalCrossing : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class TangentialCrossing : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class SignInconsistent : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class DanglingEndpoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class NoAdmissibleBasePoint : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// A numerically checked model assumption failed; carries the clause name.
class AssumptionViolated : public std::runtime_error {
 public:
  AssumptionViolated(char clause, const std::string& detail)
      : std::runtime_error(std::string("assumption (") + clause + ") violated: " + detail),
        clause(clause) {}
  char clause;
};

}  // namespace weylbec

#endif
