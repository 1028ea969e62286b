#pragma once

#include <stdexcept>
#include <string>

namespace nlse {

/// Error categories used across the library; the CLI maps them to exit codes
/// and tests dispatch on them.
enum class ErrorCode {
  InvalidDomain,
  InvalidSize,
  InvalidWidth,
  InvalidParams,
  SingularCoefficient,
  InsufficientGrid,
  QuadratureFailure,
  NegativeZ,
  NonpositiveZ,
  OutOfRange,
  OutOfBox,
  StepInstability,
  BoundaryIndex,
  EmptyTrajectory,
  BracketFailure,
  LTooLarge,
  DefocusingSoliton,
  Precondition,
  ConfigError,
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace nlse
