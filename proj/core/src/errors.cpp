#include "eemx/errors.hpp"

namespace eemx {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SizeOutOfRange: return "SizeOutOfRange";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::DifferentColumnSizes: return "DifferentColumnSizes";
    case ErrorCode::MixedColumnSizes: return "MixedColumnSizes";
    case ErrorCode::EmptyClass: return "EmptyClass";
    case ErrorCode::ClassTooSmall: return "ClassTooSmall";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::DuplicateHeader: return "DuplicateHeader";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::NoResponse: return "NoResponse";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotStandardized: return "NotStandardized";
    case ErrorCode::ConstantColumn: return "ConstantColumn";
    case ErrorCode::ConstantTarget: return "ConstantTarget";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::PerfectCollinearity: return "PerfectCollinearity";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ParseError:
    case ErrorCode::NonNumericCell:
    case ErrorCode::RaggedRows:
    case ErrorCode::DuplicateHeader:
    case ErrorCode::UnknownColumn:
    case ErrorCode::NoResponse:
    case ErrorCode::IoError:
      return ErrorCategory::Data;
    case ErrorCode::RankDeficient:
    case ErrorCode::NotSymmetric:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NotStandardized:
    case ErrorCode::ConstantColumn:
    case ErrorCode::ConstantTarget:
    case ErrorCode::ZeroVector:
    case ErrorCode::PerfectCollinearity:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Usage;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace eemx
