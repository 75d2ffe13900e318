#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toric {

enum class ErrorCode {
  // exact_lattice
  ZeroFunctional,
  ValueGroupMismatch,
  NotSaturated,
  DimensionMismatch,
  NotInSpan,
  // polytope_geometry
  NotFullDimensional,
  PointNotInterior,
  UnboundedRegion,
  // toric_pair
  NonPrimitiveRay,
  NotStronglyConvex,
  RedundantRay,
  NonStandardCoefficient,
  LengthMismatch,
  NotLogQGorenstein,
  NotKlt,
  MissingGamma,
  // proof_pipeline
  DimensionTooSmall,
  CheckFailed,
  NoInteriorPoint,
  NotLatticePolytope,
  // families / cli
  InvalidParameters,
  ExhaustedResampling,
  InvalidDocument,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace toric
