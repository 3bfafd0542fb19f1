#pragma once

#include <stdexcept>
#include <string>

namespace framelet {

enum class ErrorCode {
  InvalidDilation,
  HypothesisViolation,
  NotAFrame,
  UnboundedFamily,
  Coverage,
  QuadratureFailure,
  IllPosedOperator,
  InvalidParams,
  ConfigParse,
  NonMonotoneSweep,
};

const char* errorCodeName(ErrorCode code) noexcept;

// Library-wide exception carrying a machine-readable code plus a human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  const char* codeName() const noexcept { return errorCodeName(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace framelet
