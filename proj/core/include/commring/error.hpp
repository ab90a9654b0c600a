#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace commring {

enum class ErrorCode {
  NotSymmetric,
  ImaginaryPartNotPositiveDefinite,
  VarCountMismatch,
  IndexOutOfRange,
  DimensionMismatch,
  DegenerateMatrix,
  TolTooSmall,
  RankDeficient,
  NearDivisor,
  NoIntegerSolution,
  GeneralPositionFailure,
  NewtonDivergence,
  InsufficientPoints,
  InsufficientJetOrder,
  ShapeMismatch,
  IllConditioned,
  CalibrationFailure,
  ConfigInvalid,
};

std::string_view error_name(ErrorCode code);

/// Every failure raised by the library carries one of the ErrorCode values;
/// what() is prefixed with the code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const { return error_name(code_); }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& detail);

}  // namespace commring
