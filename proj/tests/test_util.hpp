#ifndef SDOMP_TEST_UTIL_HPP
#define SDOMP_TEST_UTIL_HPP

#include <cmath>
#include <random>

#include "sdomp/dictionary.hpp"

// Shared helpers for the test suites. The oracles in here are written
// against the raw formulas on purpose and must stay independent of the
// library solve/projection paths they check.
namespace testutil {

using sdomp::Complex;
using sdomp::CxMatrix;
using sdomp::CxVector;

inline constexpr double kPi = 3.14159265358979323846;

inline CxVector random_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CxVector v(n);
  for (int i = 0; i < n; ++i) v[i] = Complex(gauss(rng), gauss(rng));
  return v;
}

inline CxMatrix random_matrix(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CxMatrix m(rows, cols);
  for (int c = 0; c < cols; ++c)
    for (int r = 0; r < rows; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
  return m;
}

inline sdomp::Dictionary random_unit_norm_dictionary(std::mt19937_64& rng,
                                                     int rows, int cols) {
  CxMatrix m = random_matrix(rng, rows, cols);
  for (int c = 0; c < cols; ++c) m.col(c) /= m.col(c).norm();
  return sdomp::Dictionary(std::move(m), {}, 0.5);
}

// Dense inverse by Gauss-Jordan elimination with partial pivoting.
inline CxMatrix gauss_jordan_inverse(CxMatrix a) {
  const int n = static_cast<int>(a.rows());
  CxMatrix inv = CxMatrix::Identity(n, n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) == 0.0)
      throw std::runtime_error("gauss_jordan_inverse: singular matrix");
    a.row(col).swap(a.row(pivot));
    inv.row(col).swap(inv.row(pivot));
    const Complex d = a(col, col);
    a.row(col) /= d;
    inv.row(col) /= d;
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const Complex f = a(r, col);
      if (f != Complex(0.0, 0.0)) {
        a.row(r) -= f * a.row(col);
        inv.row(r) -= f * inv.row(col);
      }
    }
  }
  return inv;
}

// Closed-form magnitude of the inner product of two unit-norm ULA steering
// vectors: |sin(M pi d u) / (M sin(pi d u))| with u = sin(t2) - sin(t1).
inline double dirichlet_magnitude(int elements, double spacing_wavelengths,
                                  double theta1_deg, double theta2_deg) {
  const double u = std::sin(theta2_deg * kPi / 180.0) -
                   std::sin(theta1_deg * kPi / 180.0);
  const double x = kPi * spacing_wavelengths * u;
  const double denom = elements * std::sin(x);
  if (std::abs(denom) < 1e-300) return 1.0;
  return std::abs(std::sin(elements * x) / denom);
}

inline sdomp::AngleGrid paper_grid() { return {0.0, 30.0, 0.2}; }

inline sdomp::Dictionary paper_dictionary() {
  return sdomp::build_ula_dictionary(12, 0.5, paper_grid());
}

} // namespace testutil

#endif
