#include "toricmld/error.hpp"

namespace toric {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroFunctional: return "ZeroFunctional";
    case ErrorCode::ValueGroupMismatch: return "ValueGroupMismatch";
    case ErrorCode::NotSaturated: return "NotSaturated";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotInSpan: return "NotInSpan";
    case ErrorCode::NotFullDimensional: return "NotFullDimensional";
    case ErrorCode::PointNotInterior: return "PointNotInterior";
    case ErrorCode::UnboundedRegion: return "UnboundedRegion";
    case ErrorCode::NonPrimitiveRay: return "NonPrimitiveRay";
    case ErrorCode::NotStronglyConvex: return "NotStronglyConvex";
    case ErrorCode::RedundantRay: return "RedundantRay";
    case ErrorCode::NonStandardCoefficient: return "NonStandardCoefficient";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::NotLogQGorenstein: return "NotLogQGorenstein";
    case ErrorCode::NotKlt: return "NotKlt";
    case ErrorCode::MissingGamma: return "MissingGamma";
    case ErrorCode::DimensionTooSmall: return "DimensionTooSmall";
    case ErrorCode::CheckFailed: return "CheckFailed";
    case ErrorCode::NoInteriorPoint: return "NoInteriorPoint";
    case ErrorCode::NotLatticePolytope: return "NotLatticePolytope";
    case ErrorCode::InvalidParameters: return "InvalidParameters";
    case ErrorCode::ExhaustedResampling: return "ExhaustedResampling";
    case ErrorCode::InvalidDocument: return "InvalidDocument";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail),
      code_(code),
      detail_(detail) {}

}  // namespace toric
