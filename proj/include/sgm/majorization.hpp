#ifndef SGM_MAJORIZATION_HPP
#define SGM_MAJORIZATION_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "sgm/linalg.hpp"

namespace sgm {

enum class MajorizationKind { majorize, weak_majorize, log_majorize };

inline std::string_view to_string(MajorizationKind k) {
  switch (k) {
    case MajorizationKind::majorize: return "majorize";
    case MajorizationKind::weak_majorize: return "weak_majorize";
    case MajorizationKind::log_majorize: return "log_majorize";
  }
  return "unknown";
}

/// Prefix-by-prefix comparison of a dominant spectrum y against a dominated x.
///
/// margins[k-1] is the slack of the k-th prefix (dominant minus dominated):
/// relative sums for (weak) majorization, log-products for log majorization.
/// The last entry is the total, which doubles as the equality defect for the
/// kinds that require equal totals.
struct MajorizationReport {
  MajorizationKind kind = MajorizationKind::majorize;
  std::vector<double> margins;
  double equality_defect = 0.0;
  double tolerance = tol::majorization;
  bool verdict = false;

  bool requires_equality() const { return kind != MajorizationKind::weak_majorize; }

  /// Smallest slack among the constraints that the verdict depends on.
  double worst_margin() const {
    double worst = std::numeric_limits<double>::infinity();
    const std::size_t inequalities = requires_equality() ? margins.size() - 1 : margins.size();
    for (std::size_t i = 0; i < inequalities; ++i) worst = std::min(worst, margins[i]);
    if (requires_equality()) worst = std::min(worst, -std::abs(equality_defect));
    return worst;
  }
};

namespace detail {

inline void require_same_length(const Spectrum& y, const Spectrum& x) {
  if (y.size() != x.size() || y.size() == 0) {
    throw Error(ErrorKind::LengthMismatch, "spectra of length " + std::to_string(y.size()) +
                                               " and " + std::to_string(x.size()));
  }
}

inline MajorizationReport finish(MajorizationKind kind, std::vector<double> margins, double tol) {
  MajorizationReport r;
  r.kind = kind;
  r.margins = std::move(margins);
  r.equality_defect = r.margins.back();
  r.tolerance = tol;
  r.verdict = r.worst_margin() >= -tol;
  return r;
}

inline std::vector<double> relative_prefix_margins(const Spectrum& y, const Spectrum& x) {
  // Margins are relative to the larger l1 mass, elementwise.
  double l1 = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) l1 += std::max(std::abs(y[i]), std::abs(x[i]));
  const double scale = l1 > 0.0 ? l1 : 1.0;
  std::vector<double> margins(y.size());
  double sy = 0.0;
  double sx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    sy += y[i];
    sx += x[i];
    margins[i] = (sy - sx) / scale;
  }
  return margins;
}

inline double checked_log(double v) {
  if (v < 0.0) throw Error(ErrorKind::NegativeEntry, "entry " + std::to_string(v) + " < 0");
  if (v < tol::log_underflow) {
    throw Error(ErrorKind::NonPositiveSpectrum, "entry below log-underflow floor");
  }
  return std::log(v);
}

}  // namespace detail

/// x majorized by y: prefix sums of x bounded by those of y, equal totals.
inline MajorizationReport majorizes(const Spectrum& y, const Spectrum& x,
                                    double tol = tol::majorization) {
  detail::require_same_length(y, x);
  return detail::finish(MajorizationKind::majorize, detail::relative_prefix_margins(y, x), tol);
}

inline MajorizationReport weak_majorizes(const Spectrum& y, const Spectrum& x,
                                         double tol = tol::majorization) {
  detail::require_same_length(y, x);
  return detail::finish(MajorizationKind::weak_majorize, detail::relative_prefix_margins(y, x),
                        tol);
}

/// x log-majorized by y, evaluated as cumulative sums of logarithms.
inline MajorizationReport log_majorizes(const Spectrum& y, const Spectrum& x,
                                        double tol = tol::majorization) {
  detail::require_same_length(y, x);
  std::vector<double> margins(y.size());
  double ly = 0.0;
  double lx = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) {
    ly += detail::checked_log(y[i]);
    lx += detail::checked_log(x[i]);
    margins[i] = ly - lx;
  }
  return detail::finish(MajorizationKind::log_majorize, std::move(margins), tol);
}

/// Real spectrum of a square matrix. Hermitian input goes through the
/// Hermitian solver; anything else must be diagonalizable with real spectrum.
inline Spectrum real_spectrum(const Matrix& m) {
  require_square(m, "spectrum argument");
  if (is_hermitian(m)) return eigenvalues(HermitianMatrix(m));
  Eigen::ComplexEigenSolver<Matrix> es(m, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigFailure, "general eigensolver did not converge");
  }
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  std::vector<double> values(static_cast<std::size_t>(ev.size()));
  for (Index i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i).imag()) > 1e-8 * std::max(scale, 1.0)) {
      throw Error(ErrorKind::NonrealSpectrum,
                  "eigenvalue with imaginary part " + std::to_string(ev(i).imag()));
    }
    values[static_cast<std::size_t>(i)] = ev(i).real();
  }
  return Spectrum::sorted(std::move(values));
}

/// Spectrum of the product AB of PD factors, computed from the Hermitian
/// similar matrix A^{1/2} B A^{1/2}.
inline Spectrum product_spectrum(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  return eigenvalues(sandwich(mat_sqrt(a), b));
}

/// X log-majorized by Y, compared through sorted eigenvalues.
inline MajorizationReport eig_log_majorizes(const Matrix& x, const Matrix& y,
                                            double tol = tol::majorization) {
  return log_majorizes(real_spectrum(y), real_spectrum(x), tol);
}

inline MajorizationReport eig_log_majorizes(const HermitianMatrix& x, const HermitianMatrix& y,
                                            double tol = tol::majorization) {
  return log_majorizes(eigenvalues(y), eigenvalues(x), tol);
}

/// Sum of the k largest singular values.
inline double ky_fan_norm(const Matrix& m, Index k) {
  require_square(m, "Ky Fan argument");
  if (k < 1 || k > m.rows()) {
    throw Error(ErrorKind::BadOrder, "Ky Fan order " + std::to_string(k) + " outside [1, " +
                                         std::to_string(m.rows()) + "]");
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().head(k).sum();
}

/// Independent route to X log-majorized by Y through compound matrices:
/// lambda_1(C_k(X)) <= lambda_1(C_k(Y)) for k < n, and det X = det Y.
/// Tolerance is in log space, matching eig_log_majorizes.
inline bool compound_cross_check(const PositiveDefiniteMatrix& x, const PositiveDefiniteMatrix& y,
                                 double tol = tol::majorization) {
  if (x.dim() != y.dim()) throw Error(ErrorKind::DimensionMismatch, "operands differ in size");
  const Index n = x.dim();
  if (n > 5) throw Error(ErrorKind::InvalidArgument, "compound cross-check limited to n <= 5");
  for (Index k = 1; k < n; ++k) {
    const double lx = eigenvalues(HermitianMatrix(compound(x.matrix(), k))).largest();
    const double ly = eigenvalues(HermitianMatrix(compound(y.matrix(), k))).largest();
    if (std::log(lx) - std::log(ly) > tol) return false;
  }
  const double dx = x.matrix().partialPivLu().determinant().real();
  const double dy = y.matrix().partialPivLu().determinant().real();
  return std::abs(std::log(dx) - std::log(dy)) <= tol;
}

}  // namespace sgm

#endif  // SGM_MAJORIZATION_HPP
