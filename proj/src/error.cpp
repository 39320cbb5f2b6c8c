#include "szpiro/error.hpp"

#include <nlohmann/json.hpp>

namespace szpiro {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownVariable: return "UnknownVariable";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kModulusViolation: return "ModulusViolation";
    case ErrorCode::kRingMismatch: return "RingMismatch";
    case ErrorCode::kInvalidRing: return "InvalidRing";
    case ErrorCode::kZeroInput: return "ZeroInput";
    case ErrorCode::kCharacteristicObstruction: return "CharacteristicObstruction";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kNotExact: return "NotExact";
    case ErrorCode::kResourceLimit: return "ResourceLimit";
    case ErrorCode::kRankMismatch: return "RankMismatch";
    case ErrorCode::kZeroDivisorQuery: return "ZeroDivisorQuery";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kEmptyMatrix: return "EmptyMatrix";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kParameterViolation: return "ParameterViolation";
    case ErrorCode::kSymmetryBroken: return "SymmetryBroken";
    case ErrorCode::kComplexNotZero: return "ComplexNotZero";
    case ErrorCode::kInhomogeneousEntry: return "InhomogeneousEntry";
    case ErrorCode::kNotAnIsomorphism: return "NotAnIsomorphism";
    case ErrorCode::kSkewDegenerate: return "SkewDegenerate";
    case ErrorCode::kCharTwo: return "CharTwo";
    case ErrorCode::kNotSkew: return "NotSkew";
    case ErrorCode::kNotUnimodular: return "NotUnimodular";
    case ErrorCode::kNoUnitPivot: return "NoUnitPivot";
    case ErrorCode::kNoRegularElementFound: return "NoRegularElementFound";
    case ErrorCode::kNotClosed: return "NotClosed";
    case ErrorCode::kAxiomViolation: return "AxiomViolation";
    case ErrorCode::kHintProductMismatch: return "HintProductMismatch";
    case ErrorCode::kHintsNotCoprime: return "HintsNotCoprime";
    case ErrorCode::kNoMinorOutsideIdeal: return "NoMinorOutsideIdeal";
    case ErrorCode::kStepVerificationFailed: return "StepVerificationFailed";
    case ErrorCode::kSmallFieldExhausted: return "SmallFieldExhausted";
    case ErrorCode::kVerificationFailed: return "VerificationFailed";
    case ErrorCode::kInvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

AlgebraError::AlgebraError(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

AlgebraError::AlgebraError(ErrorCode code, const std::string& message,
                           const nlohmann::json& detail)
    : AlgebraError(code, message) {
  detail_ = std::make_shared<const nlohmann::json>(detail);
}

const nlohmann::json& AlgebraError::detail() const noexcept {
  static const nlohmann::json kNull;
  return detail_ ? *detail_ : kNull;
}

}  // namespace szpiro
