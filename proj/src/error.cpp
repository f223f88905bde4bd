#include "fracheat/error.hpp"

namespace fracheat {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::TermCapExceeded: return "TermCapExceeded";
    case ErrorCode::OutOfRegime: return "OutOfRegime";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NoZero: return "NoZero";
    case ErrorCode::DivergentTransform: return "DivergentTransform";
    case ErrorCode::UnsupportedProfile: return "UnsupportedProfile";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoJump: return "NoJump";
    case ErrorCode::SingularEndpoint: return "SingularEndpoint";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::QuadratureUnderResolved: return "QuadratureUnderResolved";
    case ErrorCode::InversionUnstable: return "InversionUnstable";
    case ErrorCode::ToleranceExceeded: return "ToleranceExceeded";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
  }
  return "Unknown";
}

ErrorCategory category(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return ErrorCategory::Parse;
    case ErrorCode::ValidationError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnsupportedOrder:
    case ErrorCode::UnsupportedProfile:
    case ErrorCode::OutOfRange:
    case ErrorCode::OutOfRegime:
    case ErrorCode::NoZero:
    case ErrorCode::NoJump:
    case ErrorCode::DivergentTransform:
      return ErrorCategory::Validation;
    default:
      return ErrorCategory::Numerical;
  }
}

}  // namespace fracheat
