#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gnplate {

enum class ErrorCode {
  NonFinite,
  NotCoercive,
  TypeMismatch,
  GridMismatch,
  IndexOutOfRange,
  InvalidArgument,
  AssemblyInconsistent,
  SolverFailure,
  EigenFailure,
  EmptyHistory,
  DomainEmpty,
  ParseError,
  UnknownKey,
  MissingRequired,
  ValidationFailed,
};

std::string_view to_string(ErrorCode code);

/// Single exception type for the library; callers dispatch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace gnplate
