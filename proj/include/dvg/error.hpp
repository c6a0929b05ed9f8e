#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dvg {

enum class ErrorCode {
  NotPrime,
  PrecisionTooLarge,
  HenselFailure,
  RingMismatch,
  NotAUnit,
  DimensionMismatch,
  NotADieudonneModule,
  NotInvertible,
  PrecisionExhausted,
  MalformedInput,
  EndpointMismatch,
  JTooSmall,
  DegenerateKernel,
  NotFound,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::PrecisionTooLarge: return "PrecisionTooLarge";
    case ErrorCode::HenselFailure: return "HenselFailure";
    case ErrorCode::RingMismatch: return "RingMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotADieudonneModule: return "NotADieudonneModule";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::MalformedInput: return "MalformedInput";
    case ErrorCode::EndpointMismatch: return "EndpointMismatch";
    case ErrorCode::JTooSmall: return "JTooSmall";
    case ErrorCode::DegenerateKernel: return "DegenerateKernel";
    case ErrorCode::NotFound: return "NotFound";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above so the
/// CLI and the Python bindings can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dvg
