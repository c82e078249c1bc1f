#include "divlink/error.h"

namespace divlink {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyDivide: return "EmptyDivide";
    case ErrorCode::ImmersionViolation: return "ImmersionViolation";
    case ErrorCode::BoundaryViolation: return "BoundaryViolation";
    case ErrorCode::TripleOrTangentIntersection: return "TripleOrTangentIntersection";
    case ErrorCode::VertexIntersection: return "VertexIntersection";
    case ErrorCode::VerticalSegment: return "VerticalSegment";
    case ErrorCode::PerturbationFailed: return "PerturbationFailed";
    case ErrorCode::NormalizationFailed: return "NormalizationFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::RangeError: return "RangeError";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::NotGeneric: return "NotGeneric";
    case ErrorCode::EpsilonCollision: return "EpsilonCollision";
    case ErrorCode::MultiComponent: return "MultiComponent";
    case ErrorCode::DegenerateDiagram: return "DegenerateDiagram";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::ZeroPolynomial: return "ZeroPolynomial";
    case ErrorCode::CalibrationDrift: return "CalibrationDrift";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace divlink
