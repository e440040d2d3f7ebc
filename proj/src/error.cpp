#include "error.hpp"

namespace hyperrig {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::AntipodalPoints: return "AntipodalPoints";
    case ErrorCode::DegenerateImmersion: return "DegenerateImmersion";
    case ErrorCode::SingularGaussMap: return "SingularGaussMap";
    case ErrorCode::NonIntegerDegree: return "NonIntegerDegree";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::DegenerateEnclosure: return "DegenerateEnclosure";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::OutsideHemisphere: return "OutsideHemisphere";
    case ErrorCode::ThetaOutOfRange: return "ThetaOutOfRange";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::TrivialGroup: return "TrivialGroup";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::RTooLarge: return "RTooLarge";
    case ErrorCode::SamplingTooCoarse: return "SamplingTooCoarse";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace hyperrig
