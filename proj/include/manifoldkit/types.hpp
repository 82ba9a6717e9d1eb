#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace manifoldkit {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Default tolerances. Every check that uses one of these accepts an override.
namespace tol {
inline constexpr double membership = 1e-8;
inline constexpr double tangency = 1e-8;
inline constexpr double round_trip = 1e-9;
inline constexpr double singularity = 1e-12;  // sigma_min / sigma_max floor
inline constexpr double definiteness = 1e-12; // lambda_min / lambda_max floor
}                                             // namespace tol

enum class ErrorCode {
  // parse / input structure
  ParseError,
  DimensionMismatch,
  NotFinite,
  // domain violations
  SpectrumOnBranchCut,
  NotSymmetric,
  NotPositiveDefinite,
  SingularInput,
  NotOrthonormal,
  NotTangent,
  NotHorizontal,
  NotNormal,
  SingularBase,
  AntipodalSpectrum,
  ComponentMismatch,
  LeftManifold,
  BaseMismatch,
  UnsupportedMetric,
  OutOfInjectivityDomain,
  RankDeficientOverlap,
  DegenerateSpectrum,
  SingularValueZero,
  LogDomainFailure,
  OutOfRange,
  WeightSchemeUnsupported,
  DecompositionFailed,
  // iterative solvers
  NoConvergence,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
  case ErrorCode::ParseError: return "ParseError";
  case ErrorCode::DimensionMismatch: return "DimensionMismatch";
  case ErrorCode::NotFinite: return "NotFinite";
  case ErrorCode::SpectrumOnBranchCut: return "SpectrumOnBranchCut";
  case ErrorCode::NotSymmetric: return "NotSymmetric";
  case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
  case ErrorCode::SingularInput: return "SingularInput";
  case ErrorCode::NotOrthonormal: return "NotOrthonormal";
  case ErrorCode::NotTangent: return "NotTangent";
  case ErrorCode::NotHorizontal: return "NotHorizontal";
  case ErrorCode::NotNormal: return "NotNormal";
  case ErrorCode::SingularBase: return "SingularBase";
  case ErrorCode::AntipodalSpectrum: return "AntipodalSpectrum";
  case ErrorCode::ComponentMismatch: return "ComponentMismatch";
  case ErrorCode::LeftManifold: return "LeftManifold";
  case ErrorCode::BaseMismatch: return "BaseMismatch";
  case ErrorCode::UnsupportedMetric: return "UnsupportedMetric";
  case ErrorCode::OutOfInjectivityDomain: return "OutOfInjectivityDomain";
  case ErrorCode::RankDeficientOverlap: return "RankDeficientOverlap";
  case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
  case ErrorCode::SingularValueZero: return "SingularValueZero";
  case ErrorCode::LogDomainFailure: return "LogDomainFailure";
  case ErrorCode::OutOfRange: return "OutOfRange";
  case ErrorCode::WeightSchemeUnsupported: return "WeightSchemeUnsupported";
  case ErrorCode::DecompositionFailed: return "DecompositionFailed";
  case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

class ManifoldError : public std::runtime_error {
public:
  ManifoldError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw ManifoldError(code, what);
}

inline void require_finite(const Matrix& x, const std::string& who) {
  if (!x.allFinite())
    fail(ErrorCode::NotFinite, who + ": matrix has NaN/Inf entries");
}

inline void require_square(const Matrix& x, const std::string& who) {
  if (x.rows() != x.cols())
    fail(ErrorCode::DimensionMismatch,
         who + ": expected square matrix, got " + std::to_string(x.rows()) +
             "x" + std::to_string(x.cols()));
}

inline void require_same_shape(const Matrix& a, const Matrix& b,
                               const std::string& who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    fail(ErrorCode::DimensionMismatch,
         who + ": shape mismatch " + std::to_string(a.rows()) + "x" +
             std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
             "x" + std::to_string(b.cols()));
}

inline Matrix symmetric_part(const Matrix& x) {
  return 0.5 * (x + x.transpose());
}

inline Matrix skew_part(const Matrix& x) { return 0.5 * (x - x.transpose()); }

} // namespace manifoldkit
