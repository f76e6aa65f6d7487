#pragma once

#include <stdexcept>
#include <string>

namespace diagcx {

enum class ErrorCode {
  kInvalidInput = 1,  // malformed text, symbols outside the alphabet
  kMismatch,          // frame words, presentations or variants disagree
  kPrecondition,      // operation precondition violated
  kResourceLimit,     // configured cap exceeded
  kInsufficientDepth, // truncated profile cannot decide the answer
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace diagcx
