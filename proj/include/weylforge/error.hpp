#pragma once

#include <stdexcept>
#include <string>

namespace weylforge {

// Numeric values are part of the C ABI (see weylforge.h); append only.
enum class ErrorCode : int {
  kOk = 0,
  kUnknownType = 1,
  kRankOutOfRange = 2,
  kInvalidSystem = 3,
  kOrbitCapExceeded = 4,
  kNoValidAssignment = 5,
  kDegenerateSample = 6,
  kNotPositive = 7,
  kConvexityFail = 8,
  kSkewUnavailable = 9,
  kBadParams = 10,
  kNonFiniteHessian = 11,
  kNotSymmetric = 12,
  kNotTraceless = 13,
  kNotPermutationInvariant = 14,
  kUnknownSpace = 15,
  kParamsViolateConstraints = 16,
  kNotAffineSymmetric = 17,
  kParse = 18,
  kInternal = 19,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace weylforge
