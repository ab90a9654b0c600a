#include "commring/error.hpp"

namespace commring {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ImaginaryPartNotPositiveDefinite: return "ImaginaryPartNotPositiveDefinite";
    case ErrorCode::VarCountMismatch: return "VarCountMismatch";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::TolTooSmall: return "TolTooSmall";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NearDivisor: return "NearDivisor";
    case ErrorCode::NoIntegerSolution: return "NoIntegerSolution";
    case ErrorCode::GeneralPositionFailure: return "GeneralPositionFailure";
    case ErrorCode::NewtonDivergence: return "NewtonDivergence";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::InsufficientJetOrder: return "InsufficientJetOrder";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::CalibrationFailure: return "CalibrationFailure";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) + ": " + detail), code_(code) {}

void fail(ErrorCode code, const std::string& detail) { throw Error(code, detail); }

}  // namespace commring
