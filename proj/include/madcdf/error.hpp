#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace madcdf {

enum class ErrorCode {
  EmptyInput,
  NonFiniteValue,
  InvalidGrid,
  TooSmall,
  DegenerateSample,
  QuantileUnavailable,
  NonFiniteEvaluation,
  StepUnderflow,
  InvalidConfig,
  BadWeights,
  BoundsInverted,
  NotMonotone,
  TooFewPoints,
  InvalidLevel,
  OutOfRange,
  UnsupportedKind,
  UnknownName,
  FileNotFound,
  ColumnNotFound,
  ParseError,
  EmptyAfterFilter,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace madcdf
