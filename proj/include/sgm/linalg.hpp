#ifndef SGM_LINALG_HPP
#define SGM_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "sgm/core.hpp"

namespace sgm {

inline void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + " must be a non-empty square matrix");
  }
}

inline double hermitian_defect(const Matrix& m) { return max_abs(m - m.adjoint()); }

inline bool is_hermitian(const Matrix& m) {
  return m.rows() == m.cols() &&
         hermitian_defect(m) <= tol::hermitian * (1.0 + max_abs(m));
}

/// Square complex matrix equal to its conjugate transpose within tolerance.
/// The stored value is exactly Hermitian: construction projects onto
/// (X + X*)/2 after the invariant check.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(const Matrix& m) {
    require_square(m, "Hermitian matrix");
    if (!m.allFinite()) {
      throw Error(ErrorKind::NonHermitianInput, "matrix has non-finite entries");
    }
    if (!is_hermitian(m)) {
      throw Error(ErrorKind::NonHermitianInput,
                  "||X - X*||_max = " + std::to_string(hermitian_defect(m)));
    }
    m_ = hermitian_part(m);
  }

  static HermitianMatrix zero(Index n) { return HermitianMatrix(Matrix::Zero(n, n)); }
  static HermitianMatrix identity(Index n) { return HermitianMatrix(Matrix::Identity(n, n)); }

  Index dim() const noexcept { return m_.rows(); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

 private:
  Matrix m_;
};

/// Descending-sorted real eigenvalue vector.
class Spectrum {
 public:
  Spectrum() = default;

  explicit Spectrum(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t i = 0; i + 1 < values_.size(); ++i) {
      if (!(values_[i] >= values_[i + 1])) {
        throw Error(ErrorKind::InvalidArgument, "spectrum must be sorted descending");
      }
    }
  }

  /// Sorts descending (stable, so ties keep input order) before wrapping.
  static Spectrum sorted(std::vector<double> values) {
    std::stable_sort(values.begin(), values.end(), std::greater<>());
    return Spectrum(std::move(values));
  }

  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double largest() const { return values_.front(); }
  double smallest() const { return values_.back(); }
  std::span<const double> values() const noexcept { return values_; }

  double sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

  friend bool operator==(const Spectrum&, const Spectrum&) = default;

 private:
  std::vector<double> values_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(const Matrix& u) : u_(u) {
    require_square(u, "unitary matrix");
    const Index n = u.rows();
    const double defect = max_abs(u * u.adjoint() - Matrix::Identity(n, n));
    if (!(defect <= tol::unitary)) {
      throw Error(ErrorKind::NonUnitary, "||UU* - I||_max = " + std::to_string(defect));
    }
  }

  static UnitaryMatrix identity(Index n) { return UnitaryMatrix(Matrix::Identity(n, n)); }

  Index dim() const noexcept { return u_.rows(); }
  const Matrix& matrix() const noexcept { return u_; }

 private:
  Matrix u_;
};

struct EigenDecomposition {
  Spectrum spectrum;
  UnitaryMatrix vectors;  // column i pairs with spectrum[i]

  Matrix reconstruct() const;
};

namespace detail {

inline std::vector<double> descending(const RealVector& ascending) {
  std::vector<double> out(static_cast<std::size_t>(ascending.size()));
  for (Index i = 0; i < ascending.size(); ++i) {
    out[static_cast<std::size_t>(i)] = ascending(ascending.size() - 1 - i);
  }
  return out;
}

inline Eigen::SelfAdjointEigenSolver<Matrix> solve(const Matrix& h, bool vectors) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(
      h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::EigFailure, "Hermitian eigensolver did not converge");
  }
  return es;
}

inline Matrix compose(const Matrix& u, std::span<const double> values) {
  RealVector d(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) d(static_cast<Index>(i)) = values[i];
  return hermitian_part(u * d.asDiagonal() * u.adjoint());
}

}  // namespace detail

inline Matrix EigenDecomposition::reconstruct() const {
  return detail::compose(vectors.matrix(), spectrum.values());
}

inline EigenDecomposition hermitian_eig(const HermitianMatrix& h) {
  auto es = detail::solve(h.matrix(), true);
  Matrix u = es.eigenvectors().rowwise().reverse();
  return {Spectrum(detail::descending(es.eigenvalues())), UnitaryMatrix(u)};
}

inline EigenDecomposition hermitian_eig(const Matrix& m) { return hermitian_eig(HermitianMatrix(m)); }

inline Spectrum eigenvalues(const HermitianMatrix& h) {
  return Spectrum(detail::descending(detail::solve(h.matrix(), false).eigenvalues()));
}

/// Hermitian matrix with smallest eigenvalue above tol::pd_floor * largest.
class PositiveDefiniteMatrix {
 public:
  explicit PositiveDefiniteMatrix(const HermitianMatrix& h) : h_(h) {
    check_floor(eigenvalues(h_));
  }
  explicit PositiveDefiniteMatrix(const Matrix& m) : PositiveDefiniteMatrix(HermitianMatrix(m)) {}

  /// Builds U diag(values) U*; only the floor on `values` is checked.
  static PositiveDefiniteMatrix from_eigen(const Matrix& u, std::span<const double> values) {
    check_floor_values(values);
    return PositiveDefiniteMatrix(HermitianMatrix(detail::compose(u, values)), Trusted{});
  }

  static PositiveDefiniteMatrix identity(Index n) {
    return PositiveDefiniteMatrix(HermitianMatrix::identity(n), Trusted{});
  }

  Index dim() const noexcept { return h_.dim(); }
  const Matrix& matrix() const noexcept { return h_.matrix(); }
  const HermitianMatrix& hermitian() const noexcept { return h_; }
  operator const HermitianMatrix&() const noexcept { return h_; }

 private:
  struct Trusted {};
  PositiveDefiniteMatrix(const HermitianMatrix& h, Trusted) : h_(h) {}

  static void check_floor_values(std::span<const double> v) {
    double hi = v.empty() ? 0.0 : *std::max_element(v.begin(), v.end());
    double lo = v.empty() ? 0.0 : *std::min_element(v.begin(), v.end());
    if (!(hi > 0.0) || !(lo > tol::pd_floor * hi) || !std::isfinite(hi)) {
      throw Error(ErrorKind::NotPositiveDefinite,
                  "eigenvalue range [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    }
  }
  static void check_floor(const Spectrum& s) { check_floor_values(s.values()); }

  HermitianMatrix h_;
};

namespace detail {

/// Spectrum and eigenvectors of a PD input, with the relative floor enforced.
inline EigenDecomposition pd_eig(const PositiveDefiniteMatrix& p) {
  auto e = hermitian_eig(p.hermitian());
  if (!(e.spectrum.smallest() > tol::pd_floor * e.spectrum.largest())) {
    throw Error(ErrorKind::NonPositiveSpectrum,
                "smallest eigenvalue " + std::to_string(e.spectrum.smallest()) +
                    " below relative floor");
  }
  return e;
}

template <typename F>
std::vector<double> map_values(const Spectrum& s, F&& f) {
  std::vector<double> out(s.size());
  std::transform(s.values().begin(), s.values().end(), out.begin(), f);
  return out;
}

}  // namespace detail

inline PositiveDefiniteMatrix mat_power(const PositiveDefiniteMatrix& p, double r) {
  if (!std::isfinite(r)) throw Error(ErrorKind::InvalidArgument, "exponent must be finite");
  if (r == 0.0) return PositiveDefiniteMatrix::identity(p.dim());
  auto e = detail::pd_eig(p);
  auto values = detail::map_values(e.spectrum, [r](double x) { return std::pow(x, r); });
  return PositiveDefiniteMatrix::from_eigen(e.vectors.matrix(), values);
}

inline PositiveDefiniteMatrix mat_sqrt(const PositiveDefiniteMatrix& p) { return mat_power(p, 0.5); }
inline PositiveDefiniteMatrix mat_inverse(const PositiveDefiniteMatrix& p) { return mat_power(p, -1.0); }

inline PositiveDefiniteMatrix mat_exp(const HermitianMatrix& h) {
  auto e = hermitian_eig(h);
  auto values = detail::map_values(e.spectrum, [](double x) { return std::exp(x); });
  return PositiveDefiniteMatrix::from_eigen(e.vectors.matrix(), values);
}

inline HermitianMatrix mat_log(const PositiveDefiniteMatrix& p) {
  auto e = detail::pd_eig(p);
  auto values = detail::map_values(e.spectrum, [](double x) { return std::log(x); });
  return HermitianMatrix(detail::compose(e.vectors.matrix(), values));
}

/// X Y X for Hermitian X and PD Y; the result is validated as PD.
inline PositiveDefiniteMatrix sandwich(const PositiveDefiniteMatrix& outer,
                                       const PositiveDefiniteMatrix& inner) {
  if (outer.dim() != inner.dim()) {
    throw Error(ErrorKind::DimensionMismatch, "sandwich factors differ in size");
  }
  return PositiveDefiniteMatrix(
      HermitianMatrix(hermitian_part(outer.matrix() * inner.matrix() * outer.matrix())));
}

inline double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

inline double trace(const HermitianMatrix& h) { return h.matrix().trace().real(); }

// Lexicographic k-subsets of {0..n-1}.
inline std::vector<std::vector<Index>> k_subsets(Index n, Index k) {
  std::vector<std::vector<Index>> out;
  std::vector<Index> cur(static_cast<std::size_t>(k));
  std::iota(cur.begin(), cur.end(), Index{0});
  while (true) {
    out.push_back(cur);
    Index i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < k; ++j) {
      cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  return out;
}

/// k-th compound: matrix of k x k minors, rows/columns indexed by
/// lexicographically ordered k-subsets.
inline Matrix compound(const Matrix& m, Index k) {
  require_square(m, "compound argument");
  const Index n = m.rows();
  if (k < 1 || k > n) {
    throw Error(ErrorKind::BadOrder, "compound order " + std::to_string(k) +
                                         " outside [1, " + std::to_string(n) + "]");
  }
  const auto subsets = k_subsets(n, k);
  const auto size = static_cast<Index>(subsets.size());
  Matrix out(size, size);
  Matrix sub(k, k);
  for (Index a = 0; a < size; ++a) {
    const auto& rows = subsets[static_cast<std::size_t>(a)];
    for (Index b = 0; b < size; ++b) {
      const auto& cols = subsets[static_cast<std::size_t>(b)];
      for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
          sub(i, j) = m(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
        }
      }
      out(a, b) = k == 1 ? sub(0, 0) : sub.partialPivLu().determinant();
    }
  }
  return out;
}

/// Haar-like random unitary (QR of a complex Gaussian with phases fixed).
inline Matrix random_unitary(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(n, n);
  for (Index j = 0; j < n; ++j) {
    for (Index i = 0; i < n; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  }
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double mag = std::abs(d);
    if (mag > 0.0) q.col(j) *= d / mag;
  }
  return q;
}

/// Q diag(lambda) Q* with lambda_i log-uniform in [1/spread, spread].
/// Deterministic in (n, seed, spread).
inline PositiveDefiniteMatrix sample_pd(Index n, std::uint64_t seed, double spread) {
  if (n < 1) throw Error(ErrorKind::InvalidArgument, "sample_pd: n must be >= 1");
  if (!(spread >= 1.0) || !std::isfinite(spread)) {
    throw Error(ErrorKind::InvalidArgument, "sample_pd: spread must be finite and >= 1");
  }
  std::mt19937_64 rng(seed);
  const Matrix q = random_unitary(n, rng);
  const double half_width = std::log(spread);
  std::uniform_real_distribution<double> uniform(-half_width, half_width);
  std::vector<double> values(static_cast<std::size_t>(n));
  for (auto& v : values) v = std::exp(uniform(rng));
  // Q (cI) Q* = cI exactly.
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values[0]; })) {
    return PositiveDefiniteMatrix::from_eigen(Matrix::Identity(n, n), values);
  }
  return PositiveDefiniteMatrix::from_eigen(q, values);
}

/// log of a sampled PD matrix scaled to spectral norm at most one.
inline HermitianMatrix sample_hermitian(Index n, std::uint64_t seed, double spread) {
  const HermitianMatrix h = mat_log(sample_pd(n, seed, spread));
  const double norm = spectral_norm(h.matrix());
  if (norm <= 1.0) return h;
  return HermitianMatrix(h.matrix() / norm);
}

}  // namespace sgm

#endif  // SGM_LINALG_HPP
