#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace eemx {

enum class ErrorCode {
  // usage / argument errors
  InvalidArgument,
  SizeOutOfRange,
  IndexOutOfRange,
  BudgetExceeded,
  DifferentColumnSizes,
  MixedColumnSizes,
  EmptyClass,
  ClassTooSmall,
  // data errors
  DimensionMismatch,
  ParseError,
  NonNumericCell,
  RaggedRows,
  DuplicateHeader,
  UnknownColumn,
  NoResponse,
  IoError,
  // numerical errors
  RankDeficient,
  NotSymmetric,
  NotPositiveDefinite,
  NotStandardized,
  ConstantColumn,
  ConstantTarget,
  ZeroVector,
  PerfectCollinearity,
};

enum class ErrorCategory { Usage, Data, Numerical };

std::string_view to_string(ErrorCode code);
ErrorCategory category_of(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace eemx
