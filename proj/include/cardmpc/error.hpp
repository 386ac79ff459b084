#pragma once

#include <stdexcept>
#include <string>

namespace cardmpc {

// Mirrors cardmpc_status in the C API (values 1..N); keep the two in sync.
enum class ErrorCode {
  Domain = 1,
  MalformedEncoding,
  SchemeInapplicable,
  ScriptMismatch,
  State,
  InsufficientSupply,
  UnsupportedExecution,
  BranchCapExceeded,
  SchemeMismatch,
};

const char* error_code_name(ErrorCode code) noexcept;

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

}  // namespace cardmpc
