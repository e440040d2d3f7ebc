#pragma once

#include <stdexcept>
#include <string>

namespace hyperrig {

// Mirrors hr_status in the C header; keep the numeric values in sync.
enum class ErrorCode {
  InvalidArgument = 1,
  AntipodalPoints = 2,
  DegenerateImmersion = 3,
  SingularGaussMap = 4,
  NonIntegerDegree = 5,
  EmptyInput = 6,
  DegenerateEnclosure = 7,
  DimensionTooLarge = 8,
  OutsideHemisphere = 9,
  ThetaOutOfRange = 10,
  BadDimension = 11,
  TrivialGroup = 12,
  NotInvariant = 13,
  RTooLarge = 14,
  SamplingTooCoarse = 15,
  ConfigError = 16,
  IoError = 17,
  Internal = 18,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace hyperrig
