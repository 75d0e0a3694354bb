#pragma once

#include <stdexcept>
#include <string>

namespace dshell {

enum class ErrorCode {
  SingularMatrix,
  InvalidArgument,
  InvalidRegime,
  ConfiningRegime,
  UnsupportedRegime,
  DomainError,
  DegenerateContext,
  SpectralPoint,
  NoBoundState,
  NotLinear,
};

const char* to_string(ErrorCode code);

/// Exception carrying a machine-readable code alongside the message.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidRegime: return "InvalidRegime";
    case ErrorCode::ConfiningRegime: return "ConfiningRegime";
    case ErrorCode::UnsupportedRegime: return "UnsupportedRegime";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::DegenerateContext: return "DegenerateContext";
    case ErrorCode::SpectralPoint: return "SpectralPoint";
    case ErrorCode::NoBoundState: return "NoBoundState";
    case ErrorCode::NotLinear: return "NotLinear";
  }
  return "Error";
}

}  // namespace dshell
