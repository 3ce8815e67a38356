#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace radiant {

enum class ErrorKind {
  SubdivisionLimit,
  NonFinite,
  StepUnderflow,
  BadBracket,
  DomainError,
  UnsupportedSpace,
  PoleError,
  NoConvergence,
  HypothesisViolation,
  BracketNotFound,
  NotStabilized,
  OverlapMismatch,
  NonPositivePsi,
  ConfigError,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported as Error; `kind()` carries the
/// machine-readable category, `what()` a human diagnostic.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Raised by the ODE integrator when the step size collapses. `radius()` is
/// the last radius the trajectory reached, which is how callers locate blow-up.
class StepUnderflowError : public Error {
 public:
  StepUnderflowError(double radius, const std::string& message)
      : Error(ErrorKind::StepUnderflow, message), radius_(radius) {}

  double radius() const noexcept { return radius_; }

 private:
  double radius_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SubdivisionLimit: return "SubdivisionLimit";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::StepUnderflow: return "StepUnderflow";
    case ErrorKind::BadBracket: return "BadBracket";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::UnsupportedSpace: return "UnsupportedSpace";
    case ErrorKind::PoleError: return "PoleError";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::BracketNotFound: return "BracketNotFound";
    case ErrorKind::NotStabilized: return "NotStabilized";
    case ErrorKind::OverlapMismatch: return "OverlapMismatch";
    case ErrorKind::NonPositivePsi: return "NonPositivePsi";
    case ErrorKind::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace radiant
