#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mbs {

enum class ErrorKind {
  NonPositiveLength,
  NegativeAmplitude,
  InvalidConfig,
  ParseError,
  SchemaError,
  ConvergenceFailure,
  NoZeroSector,
  GaplessPoint,
  DomainError,
  DegenerateRoots,
  BoundaryRoot,
  SiteOutOfRange,
  StepTooLarge,
  NormDrift,
  NoOscillation,
  LowConfidence,
  TargetOutOfRange,
  InsufficientDecoupling,
  ZeroSectorLeakage,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Base exception for every failure raised by the library. The kind is the
/// machine-readable tag; what() carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

struct Violation {
  ErrorKind kind;
  std::string field;
  std::string message;
};

/// Raised by validate() with every violation found, not just the first.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const noexcept { return violations_; }

 private:
  std::vector<Violation> violations_;
};

}  // namespace mbs
