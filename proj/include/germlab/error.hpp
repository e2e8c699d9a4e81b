#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace germlab {

/// Error taxonomy shared by every layer. The numeric values are the CLI exit
/// codes; `InvalidInput` and `Parse` share code 2.
enum class ErrorCode {
  Parse = 2,
  InvalidInput = 20,
  MissingInput = 21,
  UnsupportedRegime = 3,
  NonGeneric = 4,
  NonIsolated = 5,
  Resource = 6,
  Inconsistent = 7,
};

int exit_code(ErrorCode code);
std::string_view error_name(ErrorCode code);

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

}  // namespace germlab
