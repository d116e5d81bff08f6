#include "weylforge/error.hpp"

namespace weylforge {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kUnknownType: return "UnknownType";
    case ErrorCode::kRankOutOfRange: return "RankOutOfRange";
    case ErrorCode::kInvalidSystem: return "InvalidSystem";
    case ErrorCode::kOrbitCapExceeded: return "OrbitCapExceeded";
    case ErrorCode::kNoValidAssignment: return "NoValidAssignment";
    case ErrorCode::kDegenerateSample: return "DegenerateSample";
    case ErrorCode::kNotPositive: return "NotPositive";
    case ErrorCode::kConvexityFail: return "ConvexityFail";
    case ErrorCode::kSkewUnavailable: return "SkewUnavailable";
    case ErrorCode::kBadParams: return "BadParams";
    case ErrorCode::kNonFiniteHessian: return "NonFiniteHessian";
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kNotTraceless: return "NotTraceless";
    case ErrorCode::kNotPermutationInvariant: return "NotPermutationInvariant";
    case ErrorCode::kUnknownSpace: return "UnknownSpace";
    case ErrorCode::kParamsViolateConstraints: return "ParamsViolateConstraints";
    case ErrorCode::kNotAffineSymmetric: return "NotAffineSymmetric";
    case ErrorCode::kParse: return "Parse";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace weylforge
