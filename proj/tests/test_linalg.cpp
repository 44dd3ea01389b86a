#include <doctest.h>

#include "sdomp/linalg.hpp"
#include "test_util.hpp"

using namespace sdomp;

TEST_CASE("regularized solve: zero matrix scales the identity") {
  const CxMatrix g = CxMatrix::Zero(4, 4);
  const CxMatrix rhs = CxMatrix::Identity(4, 4);
  const CxMatrix x = regularized_hermitian_solve(g, 2.0, rhs);
  CHECK((x - 0.5 * CxMatrix::Identity(4, 4)).norm() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("regularized solve: identity plus unit shift halves the rhs") {
  std::mt19937_64 rng(11);
  const CxVector v = testutil::random_vector(rng, 5);
  const CxMatrix x = regularized_hermitian_solve(CxMatrix::Identity(5, 5), 1.0, v);
  CHECK((x - 0.5 * v).norm() <= 1e-12 * v.norm());
}

TEST_CASE("regularized solve matches a dense-inverse oracle") {
  std::mt19937_64 rng(12);
  const CxMatrix b = testutil::random_matrix(rng, 4, 2);
  CxMatrix g = b * b.adjoint();
  g = 0.5 * (g + g.adjoint().eval());
  const CxMatrix rhs = testutil::random_matrix(rng, 4, 1);
  const double reg = 0.01;

  CxMatrix shifted = g;
  shifted.diagonal().array() += reg;
  const CxMatrix expected = testutil::gauss_jordan_inverse(shifted) * rhs;

  const CxMatrix got = regularized_hermitian_solve(g, reg, rhs);
  CHECK((got - expected).norm() <= 1e-8 * (1.0 + expected.norm()));
}

TEST_CASE("regularized solve rejects bad inputs") {
  std::mt19937_64 rng(13);
  CxMatrix g = testutil::random_matrix(rng, 3, 3); // generically non-Hermitian
  CHECK_THROWS_AS(regularized_hermitian_solve(g, 1.0, CxMatrix::Identity(3, 3)),
                  contract_violation);
  CHECK_THROWS_AS(
      regularized_hermitian_solve(CxMatrix::Zero(3, 3), 0.0,
                                  CxMatrix::Identity(3, 3)),
      std::invalid_argument);
  CHECK_THROWS_AS(
      regularized_hermitian_solve(CxMatrix::Zero(3, 3), -1.0,
                                  CxMatrix::Identity(3, 3)),
      std::invalid_argument);
  CxMatrix nan_rhs = CxMatrix::Zero(3, 1);
  nan_rhs(0, 0) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(
      regularized_hermitian_solve(CxMatrix::Zero(3, 3), 1.0, nan_rhs),
      std::invalid_argument);
}

TEST_CASE("regularized solve residual and symmetrization properties") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 2 + static_cast<int>(rng() % 6);
    const CxMatrix b = testutil::random_matrix(rng, m, std::max(1, m - 1));
    const CxMatrix bbh = b * b.adjoint();
    const CxMatrix g = 0.5 * (bbh + bbh.adjoint()).eval();
    const CxMatrix rhs = testutil::random_matrix(rng, m, 2);
    const double reg = std::pow(10.0, -1.0 - static_cast<double>(rng() % 4));

    const CxMatrix x = regularized_hermitian_solve(g, reg, rhs);
    CxMatrix shifted = g;
    shifted.diagonal().array() += reg;
    CHECK((shifted * x - rhs).norm() <= 1e-8 * (rhs.norm() + 1.0));

    // Result must not depend on which Hermitian representative we pass.
    const CxMatrix x_sym =
        regularized_hermitian_solve(0.5 * (g + g.adjoint()).eval(), reg, rhs);
    CHECK((x - x_sym).norm() <= 1e-8 * (x.norm() + 1.0));
  }
}

TEST_CASE("projector: single standard basis vector zeroes one coordinate") {
  CxMatrix basis = CxMatrix::Zero(4, 1);
  basis(0, 0) = 1.0;
  CxVector x(4);
  x << Complex(3, 0), Complex(4, 0), Complex(0, 0), Complex(0, 0);
  const CxVector r = orthogonal_projector_apply(basis, x);
  CHECK(std::abs(r[0]) <= 1e-12);
  CHECK(std::abs(r[1] - Complex(4, 0)) <= 1e-12);
  CHECK(r.norm() == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("projector annihilates vectors inside the span") {
  std::mt19937_64 rng(15);
  const CxMatrix basis = testutil::random_matrix(rng, 6, 3);
  const CxVector coeffs = testutil::random_vector(rng, 3);
  const CxVector x = basis * coeffs;
  const CxVector r = orthogonal_projector_apply(basis, x);
  CHECK(r.norm() <= 1e-8 * x.norm());
}

TEST_CASE("projector matches the explicit Gram-inverse formula") {
  std::mt19937_64 rng(16);
  const CxMatrix basis = testutil::random_matrix(rng, 6, 2);
  const CxVector x = testutil::random_vector(rng, 6);

  const CxMatrix gram = basis.adjoint() * basis;
  const CxMatrix p = CxMatrix::Identity(6, 6) -
                     basis * testutil::gauss_jordan_inverse(gram) *
                         basis.adjoint();
  const CxVector expected = p * x;

  const CxVector got = orthogonal_projector_apply(basis, x);
  CHECK((got - expected).norm() <= 1e-8);
  CHECK((basis.adjoint() * got).cwiseAbs().maxCoeff() <= 1e-8);
}

TEST_CASE("projector idempotence and norm reduction") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = 3 + static_cast<int>(rng() % 6);
    const int k = 1 + static_cast<int>(rng() % (m - 1));
    const CxMatrix basis = testutil::random_matrix(rng, m, k);
    const CxVector x = testutil::random_vector(rng, m);
    const CxVector once = orthogonal_projector_apply(basis, x);
    const CxVector twice = orthogonal_projector_apply(basis, once);
    CHECK((twice - once).cwiseAbs().maxCoeff() <= 1e-8);
    CHECK(once.norm() <= x.norm() * (1.0 + 1e-12));
  }
}

TEST_CASE("projector rejects rank-deficient bases") {
  std::mt19937_64 rng(18);
  CxMatrix basis(5, 2);
  basis.col(0) = testutil::random_vector(rng, 5);
  basis.col(1) = basis.col(0);
  const CxVector x = testutil::random_vector(rng, 5);
  CHECK_THROWS_AS(orthogonal_projector_apply(basis, x),
                  degenerate_basis_error);
  CHECK_THROWS_AS(least_squares_coefficients(basis, x),
                  degenerate_basis_error);
}
