#include "mbs/errors.hpp"

namespace mbs {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::NegativeAmplitude: return "NegativeAmplitude";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorKind::NoZeroSector: return "NoZeroSector";
    case ErrorKind::GaplessPoint: return "GaplessPoint";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DegenerateRoots: return "DegenerateRoots";
    case ErrorKind::BoundaryRoot: return "BoundaryRoot";
    case ErrorKind::SiteOutOfRange: return "SiteOutOfRange";
    case ErrorKind::StepTooLarge: return "StepTooLarge";
    case ErrorKind::NormDrift: return "NormDrift";
    case ErrorKind::NoOscillation: return "NoOscillation";
    case ErrorKind::LowConfidence: return "LowConfidence";
    case ErrorKind::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorKind::InsufficientDecoupling: return "InsufficientDecoupling";
    case ErrorKind::ZeroSectorLeakage: return "ZeroSectorLeakage";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(message) {}

namespace {

std::string join_violations(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.field + ": " + v.message;
  }
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorKind::InvalidConfig : violations.front().kind,
            join_violations(violations)),
      violations_(std::move(violations)) {}

}  // namespace mbs
