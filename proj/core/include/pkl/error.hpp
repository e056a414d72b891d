#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pkl {

enum class ErrorCode {
  InvalidInput,
  DomainError,
  UnknownPoint,
  NonFiniteEntry,
  DimensionMismatch,
  ShapeMismatch,
  NotPSD,
  VanishingKernel,
  DegenerateBasePoint,
  NonConvergence,
  PreconditionFailed,
  InfeasibleBase,
  HypothesisFailed,
};

std::string_view to_string(ErrorCode code) noexcept;

// Every failure raised by the library carries a stable code; the CLI
// reports it verbatim in its {"error": ..., "detail": ...} object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pkl
