#ifndef SGM_CORE_HPP
#define SGM_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace sgm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

enum class ErrorKind {
  NonHermitianInput,
  NotPositiveDefinite,
  NonUnitary,
  EigFailure,
  NonPositiveSpectrum,
  BadOrder,
  DimensionMismatch,
  WeightOutOfRange,
  NumericBreakdown,
  LengthMismatch,
  NegativeEntry,
  NonrealSpectrum,
  SOutOfRange,
  PreconditionNotMet,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonHermitianInput: return "NonHermitianInput";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::EigFailure: return "EigFailure";
    case ErrorKind::NonPositiveSpectrum: return "NonPositiveSpectrum";
    case ErrorKind::BadOrder: return "BadOrder";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::WeightOutOfRange: return "WeightOutOfRange";
    case ErrorKind::NumericBreakdown: return "NumericBreakdown";
    case ErrorKind::LengthMismatch: return "LengthMismatch";
    case ErrorKind::NegativeEntry: return "NegativeEntry";
    case ErrorKind::NonrealSpectrum: return "NonrealSpectrum";
    case ErrorKind::SOutOfRange: return "SOutOfRange";
    case ErrorKind::PreconditionNotMet: return "PreconditionNotMet";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Numerical tolerances shared across modules.
namespace tol {
// Hermitian / unitary invariants, absolute-plus-relative in max norm.
inline constexpr double hermitian = 1e-10;
inline constexpr double unitary = 1e-10;
// Eigendecomposition reconstruction, relative to ||H||_max.
inline constexpr double reconstruction = 1e-10;
// Smallest eigenvalue must exceed this fraction of the largest.
inline constexpr double pd_floor = 1e-12;
// Similarity witness residual, relative to ||A # B||.
inline constexpr double similarity = 1e-8;
// Default majorization slack (log-space absolute for log majorization).
inline constexpr double majorization = 1e-9;
// PSD verdicts: eigenvalue floor is -psd * lambda_1(reference).
inline constexpr double psd = 1e-9;
// Prefix products: entries below this are rejected before taking logs.
inline constexpr double log_underflow = 1e-300;
}  // namespace tol

inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace sgm

#endif  // SGM_CORE_HPP
