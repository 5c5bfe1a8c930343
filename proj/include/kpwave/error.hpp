#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace kpwave {

enum class ErrorCode {
  InvalidArgument,
  NoPeriodicOrbit,
  AmbiguousWell,
  DegenerateTurningPoint,
  QuadratureNotConverged,
  IntegrationFailure,
  PeriodicityViolation,
  ModulusOutOfRange,
  StencilLeftRegion,
  NotKdV,
  WronskianDegenerate,
  ScaleOverflow,
  NonRealEvans,
  FitIllConditioned,
  StructureViolation,
  GapViolation,
  NoContraction,
  PeriodMapSingular,
  ResidualExceeded,
};

std::string_view to_string(ErrorCode code);

// Numerical and contract failures raised by the library. The code is what
// callers (and the CLI exit-code mapping) dispatch on; the message carries
// the measured values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Input/precondition problems as opposed to numerical breakdown.
  bool is_usage_error() const noexcept {
    return code_ == ErrorCode::InvalidArgument || code_ == ErrorCode::ModulusOutOfRange ||
           code_ == ErrorCode::NotKdV;
  }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NoPeriodicOrbit: return "NoPeriodicOrbit";
    case ErrorCode::AmbiguousWell: return "AmbiguousWell";
    case ErrorCode::DegenerateTurningPoint: return "DegenerateTurningPoint";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::IntegrationFailure: return "IntegrationFailure";
    case ErrorCode::PeriodicityViolation: return "PeriodicityViolation";
    case ErrorCode::ModulusOutOfRange: return "ModulusOutOfRange";
    case ErrorCode::StencilLeftRegion: return "StencilLeftRegion";
    case ErrorCode::NotKdV: return "NotKdV";
    case ErrorCode::WronskianDegenerate: return "WronskianDegenerate";
    case ErrorCode::ScaleOverflow: return "ScaleOverflow";
    case ErrorCode::NonRealEvans: return "NonRealEvans";
    case ErrorCode::FitIllConditioned: return "FitIllConditioned";
    case ErrorCode::StructureViolation: return "StructureViolation";
    case ErrorCode::GapViolation: return "GapViolation";
    case ErrorCode::NoContraction: return "NoContraction";
    case ErrorCode::PeriodMapSingular: return "PeriodMapSingular";
    case ErrorCode::ResidualExceeded: return "ResidualExceeded";
  }
  return "Unknown";
}

}  // namespace kpwave
