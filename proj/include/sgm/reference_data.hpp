#ifndef SGM_REFERENCE_DATA_HPP
#define SGM_REFERENCE_DATA_HPP

#include <array>

#include "sgm/core.hpp"

// Published 2x2 counterexamples, printed to four decimals. The expected
// values below are the printed ones; tolerances downstream account for the
// rounding of the inputs.
namespace sgm::reference {

inline Matrix real2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

/// Outside the admissible s-range, the sandwich power is not log-majorized
/// by the spectral mean: t = 1/3, s = 2.1.
struct NatlogBoundCounterexample {
  static constexpr double t = 1.0 / 3.0;
  static constexpr double s = 2.1;
  static Matrix a() { return real2(79.1784, 19.0569, 19.0569, 85.5520); }
  static Matrix b() { return real2(76.5012, 49.4980, 49.4980, 57.1403); }
  // (B^{ts/2} A^{(1-t)s} B^{ts/2})^{1/s}
  static Matrix sandwich_power() { return real2(76.2413, 32.5902, 32.5902, 70.2008); }
  static Matrix spectral_mean() { return real2(75.6010, 32.6424, 32.6424, 70.8404); }
  static constexpr std::array<double, 2> sandwich_power_spectrum{105.9509, 40.4911};
  static constexpr std::array<double, 2> spectral_mean_spectrum{105.9498, 40.4916};
  static constexpr double spectrum_tolerance = 5e-4;
  static constexpr double entry_tolerance = 1e-3;
};

/// B1 >= B2 yet A nat_t B1 - A nat_t B2 is indefinite: t = 1/3.
struct SpectralNotMonotoneCounterexample {
  static constexpr double t = 1.0 / 3.0;
  static Matrix a() { return real2(36.4987, -34.0028, -34.0028, 39.8198); }
  static Matrix b1() { return real2(6.8259, -11.0027, -11.0027, 33.6773); }
  static Matrix b2() { return real2(2.5166, -0.2222, -0.2222, 3.4253); }
  static Matrix mean_b1() { return real2(21.5984, -24.0515, -24.0515, 36.6270); }
  static Matrix mean_b2() { return real2(13.4040, -10.9429, -10.9429, 15.7328); }
  // Eigenvalues of the difference, ascending as printed.
  static constexpr std::array<double, 2> difference_eigenvalues{-0.0213, 29.1098};
  static constexpr double eigenvalue_tolerance = 5e-3;
  static constexpr double entry_tolerance = 1e-3;
};

}  // namespace sgm::reference

#endif  // SGM_REFERENCE_DATA_HPP
