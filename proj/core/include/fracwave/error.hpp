#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracwave {

enum class ErrorCode {
  NonConvergence,
  Overflow,
  RegionViolation,
  NotTempered,
  ShapeMismatch,
  BandUnresolvable,
  TailDominates,
  InsufficientData,
  QuadratureUnstable,
  InvalidArgument,
  UsageError,
  ValidationError,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every library failure is reported through this type; the code lets callers
// (the CLI in particular) map failures onto exit statuses without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::RegionViolation: return "RegionViolation";
    case ErrorCode::NotTempered: return "NotTempered";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::BandUnresolvable: return "BandUnresolvable";
    case ErrorCode::TailDominates: return "TailDominates";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::QuadratureUnstable: return "QuadratureUnstable";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UsageError: return "UsageError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace fracwave
