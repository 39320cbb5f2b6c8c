#pragma once

#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json_fwd.hpp>

namespace szpiro {

/// Failure modes shared by every module. The CLI maps these onto exit codes.
enum class ErrorCode {
  // poly_core
  kUnknownVariable,
  kSyntaxError,
  kModulusViolation,
  kRingMismatch,
  kInvalidRing,
  kZeroInput,
  kCharacteristicObstruction,
  kArityMismatch,
  kNotExact,
  // groebner
  kResourceLimit,
  kRankMismatch,
  kZeroDivisorQuery,
  // polymat
  kNotSquare,
  kEmptyMatrix,
  kShapeMismatch,
  kParameterViolation,
  kSymmetryBroken,
  // resolution
  kComplexNotZero,
  kInhomogeneousEntry,
  kNotAnIsomorphism,
  kSkewDegenerate,
  kCharTwo,
  kNotSkew,
  kNotUnimodular,
  kNoUnitPivot,
  // ring_builder
  kNoRegularElementFound,
  kNotClosed,
  kAxiomViolation,
  // regularizer
  kHintProductMismatch,
  kHintsNotCoprime,
  kNoMinorOutsideIdeal,
  kStepVerificationFailed,
  kSmallFieldExhausted,
  kVerificationFailed,
  // io
  kInvalidInput,
};

std::string_view to_string(ErrorCode code);

class AlgebraError : public std::runtime_error {
 public:
  AlgebraError(ErrorCode code, const std::string& message);
  AlgebraError(ErrorCode code, const std::string& message, const nlohmann::json& detail);

  ErrorCode code() const noexcept { return code_; }
  /// Structured diagnostic payload (partial reports, offending entries); may be null.
  const nlohmann::json& detail() const noexcept;

 private:
  ErrorCode code_;
  std::shared_ptr<const nlohmann::json> detail_;
};

}  // namespace szpiro
