#pragma once

#include <stdexcept>
#include <string>

namespace ganlab {

enum class ErrorCode {
  NotSymmetric,
  NegativeEigenvalue,
  DimensionMismatch,
  NonIdentityCovariance,
  RankOutOfRange,
  NumericalError,
  SizeMismatch,
  TooLarge,
  DimensionNot1D,
  InvalidDistribution,
  AlphabetMismatch,
  CertificateViolated,
  InvalidSpec,
  OptimizerFailed,
  InvalidA,
  InsufficientSamples,
  DegenerateGrid,
  NonDecreasingFit,
  SingularA,
  StepBlowup,
  BadInit,
  OrthogonalV,
  UnknownKey,
  BadValue,
  MissingRequired,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NegativeEigenvalue: return "NegativeEigenvalue";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonIdentityCovariance: return "NonIdentityCovariance";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::NumericalError: return "NumericalError";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::DimensionNot1D: return "DimensionNot1D";
    case ErrorCode::InvalidDistribution: return "InvalidDistribution";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::CertificateViolated: return "CertificateViolated";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::OptimizerFailed: return "OptimizerFailed";
    case ErrorCode::InvalidA: return "InvalidA";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::DegenerateGrid: return "DegenerateGrid";
    case ErrorCode::NonDecreasingFit: return "NonDecreasingFit";
    case ErrorCode::SingularA: return "SingularA";
    case ErrorCode::StepBlowup: return "StepBlowup";
    case ErrorCode::BadInit: return "BadInit";
    case ErrorCode::OrthogonalV: return "OrthogonalV";
    case ErrorCode::UnknownKey: return "UnknownKey";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::MissingRequired: return "MissingRequired";
  }
  return "UnknownError";
}

/// Exception carrying a machine-checkable error code next to the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ganlab
