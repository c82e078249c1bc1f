#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace divlink {

enum class ErrorCode {
  // divide_model
  EmptyDivide,
  ImmersionViolation,
  BoundaryViolation,
  TripleOrTangentIntersection,
  VertexIntersection,
  VerticalSegment,
  PerturbationFailed,
  NormalizationFailed,
  // divide_dsl
  SyntaxError,
  RangeError,
  // generators
  InvalidParams,
  UnknownName,
  GenerationFailed,
  // diagram_builder
  NotGeneric,
  EpsilonCollision,
  // invariants
  MultiComponent,
  DegenerateDiagram,
  ResourceLimit,
  ZeroPolynomial,
  // cli
  CalibrationDrift,
  Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Every failure the library reports is one of these; `code()` drives CLI exit codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace divlink
