#include "madcdf/error.hpp"

namespace madcdf {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::QuantileUnavailable: return "QuantileUnavailable";
    case ErrorCode::NonFiniteEvaluation: return "NonFiniteEvaluation";
    case ErrorCode::StepUnderflow: return "StepUnderflow";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::BadWeights: return "BadWeights";
    case ErrorCode::BoundsInverted: return "BoundsInverted";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ColumnNotFound: return "ColumnNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
  }
  return "Unknown";
}

}  // namespace madcdf
