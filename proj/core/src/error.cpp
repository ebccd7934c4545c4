#include "wedge/error.hpp"

namespace wedge {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSemisimple: return "NotSemisimple";
    case ErrorCode::NotInvolution: return "NotInvolution";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::NotCompatible: return "NotCompatible";
    case ErrorCode::NonIntegerSpectrum: return "NonIntegerSpectrum";
    case ErrorCode::InvalidCone: return "InvalidCone";
    case ErrorCode::UnsupportedRestriction: return "UnsupportedRestriction";
    case ErrorCode::InvarianceFailed: return "InvarianceFailed";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::SingularResolvent: return "SingularResolvent";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace wedge
