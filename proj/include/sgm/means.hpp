#ifndef SGM_MEANS_HPP
#define SGM_MEANS_HPP

#include <cmath>
#include <string>

#include <Eigen/SVD>

#include "sgm/linalg.hpp"

namespace sgm {

/// Interpolation weight t in [0, 1].
class Weight {
 public:
  explicit Weight(double t) : t_(t) {
    if (!(t >= 0.0 && t <= 1.0)) {
      throw Error(ErrorKind::WeightOutOfRange, "t = " + std::to_string(t) + " not in [0, 1]");
    }
  }
  double value() const noexcept { return t_; }
  Weight complement() const { return Weight(1.0 - t_); }

 private:
  double t_;
};

inline void require_same_dim(const PositiveDefiniteMatrix& a, const PositiveDefiniteMatrix& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "operands are " + std::to_string(a.dim()) +
                                                  "x" + std::to_string(a.dim()) + " and " +
                                                  std::to_string(b.dim()) + "x" +
                                                  std::to_string(b.dim()));
  }
}

/// Weighted metric geometric mean A #_t B = A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}.
inline PositiveDefiniteMatrix metric_mean(const PositiveDefiniteMatrix& a,
                                          const PositiveDefiniteMatrix& b, Weight t) {
  require_same_dim(a, b);
  const auto e = detail::pd_eig(a);
  auto sqrt_values = detail::map_values(e.spectrum, [](double x) { return std::sqrt(x); });
  auto isqrt_values = detail::map_values(e.spectrum, [](double x) { return 1.0 / std::sqrt(x); });
  const auto a_half = PositiveDefiniteMatrix::from_eigen(e.vectors.matrix(), sqrt_values);
  const auto a_ihalf = PositiveDefiniteMatrix::from_eigen(e.vectors.matrix(), isqrt_values);
  const auto inner = sandwich(a_ihalf, b);
  return sandwich(a_half, mat_power(inner, t.value()));
}

inline PositiveDefiniteMatrix geometric_mean(const PositiveDefiniteMatrix& a,
                                             const PositiveDefiniteMatrix& b) {
  return metric_mean(a, b, Weight(0.5));
}

/// G_t = (A^{-1} # B)^t.
inline PositiveDefiniteMatrix g_factor(const PositiveDefiniteMatrix& a,
                                       const PositiveDefiniteMatrix& b, Weight t) {
  require_same_dim(a, b);
  return mat_power(geometric_mean(mat_inverse(a), b), t.value());
}

/// Weighted spectral geometric mean A natural_t B = C^t A C^t with C = A^{-1} # B.
inline PositiveDefiniteMatrix spectral_mean(const PositiveDefiniteMatrix& a,
                                            const PositiveDefiniteMatrix& b, Weight t) {
  return sandwich(g_factor(a, b, t), a);
}

/// Positive similarity between A # B and (A nat_{1-t} B)^{1/2} U (A nat_t B)^{1/2}.
/// The conjugator S is G_t itself, so S^{-1} (A # B) S equals the target.
struct SimilarityWitness {
  PositiveDefiniteMatrix conjugator;  // S = G_t
  UnitaryMatrix rotator;              // U = R^{-1} (R R*)^{1/2}
  Matrix target;                      // (A nat_{1-t} B)^{1/2} U (A nat_t B)^{1/2}
  PositiveDefiniteMatrix geometric;   // A # B

  // Intermediates of the construction.
  Matrix v;  // (A nat_t B)^{-1/2} G_t
  Matrix w;  // G_t (B nat_t A)^{1/2}
  Matrix r;  // V W

  /// ||S^{-1} (A # B) S - target||_2 / ||A # B||_2.
  double conjugacy_residual() const {
    const Matrix s_inv = mat_inverse(conjugator).matrix();
    const Matrix lhs = s_inv * geometric.matrix() * conjugator.matrix();
    return spectral_norm(lhs - target) / spectral_norm(geometric.matrix());
  }

  double unitarity_defect() const {
    const Index n = rotator.dim();
    return max_abs(rotator.matrix() * rotator.matrix().adjoint() - Matrix::Identity(n, n));
  }
};

inline SimilarityWitness similarity_witness(const PositiveDefiniteMatrix& a,
                                            const PositiveDefiniteMatrix& b, Weight t) {
  require_same_dim(a, b);
  const auto g = g_factor(a, b, t);
  const auto forward = sandwich(g, a);                     // A nat_t B
  const auto backward = spectral_mean(a, b, t.complement());  // B nat_t A
  const Matrix v = mat_power(forward, -0.5).matrix() * g.matrix();
  const Matrix w = g.matrix() * mat_sqrt(backward).matrix();
  const Matrix r = v * w;

  // R = X S Y* gives (R R*)^{1/2} = X S X*, so R^{-1} (R R*)^{1/2} = Y X*.
  // Evaluating it this way keeps U unitary when R is ill-conditioned.
  Eigen::JacobiSVD<Matrix> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (!(sv(sv.size() - 1) > std::sqrt(tol::pd_floor) * sv(0))) {
    throw Error(ErrorKind::NumericBreakdown, "R is numerically singular");
  }
  const Matrix u = svd.matrixV() * svd.matrixU().adjoint();

  const Matrix target = mat_sqrt(backward).matrix() * u * mat_sqrt(forward).matrix();
  return SimilarityWitness{g, UnitaryMatrix(u), target, geometric_mean(a, b), v, w, r};
}

}  // namespace sgm

#endif  // SGM_MEANS_HPP
