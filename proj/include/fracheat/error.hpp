#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fracheat {

/// Failure modes reported by the library. Every thrown fracheat::Error
/// carries exactly one of these.
enum class ErrorCode {
  // Mittag-Leffler evaluation
  TermCapExceeded,
  OutOfRegime,
  UnsupportedOrder,
  NoZero,
  DivergentTransform,
  // spectral solver / pennes
  UnsupportedProfile,
  NonFiniteValue,
  OutOfRange,
  NoJump,
  // oracles
  SingularEndpoint,
  GridTooCoarse,
  // semi-infinite
  QuadratureUnderResolved,
  InversionUnstable,
  // cross-checks
  ToleranceExceeded,
  // generic precondition failure
  InvalidArgument,
  // scenario files
  ParseError,
  ValidationError,
};

/// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory { Parse = 1, Validation = 2, Numerical = 3 };

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return fracheat::category(code_); }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace fracheat
