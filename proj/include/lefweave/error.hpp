#pragma once

#include <stdexcept>
#include <string>

namespace lef {

enum class ErrorCode {
  DimensionMismatch,
  InvalidTwistCenter,
  Precondition,
  OutOfRange,
  ParityMismatch,
  Parse,
  UndefinedName,
  Unsupported,
  Internal,
};

const char* to_string(ErrorCode code);

/// Every failure surfaced by the engine.  The code identifies the category;
/// the message is human readable and already includes any location.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message) : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace lef
