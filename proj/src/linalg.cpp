#include "sdomp/linalg.hpp"

#include <cmath>

namespace sdomp {

void ensure_finite(const CxMatrix& m, const std::string& name) {
  if (!m.allFinite())
    throw std::invalid_argument(name + ": non-finite entry");
}

void ensure_finite(const CxVector& v, const std::string& name) {
  if (!v.allFinite())
    throw std::invalid_argument(name + ": non-finite entry");
}

CxMatrix regularized_hermitian_solve(const CxMatrix& gram, double reg,
                                     const CxMatrix& rhs) {
  if (gram.rows() != gram.cols())
    throw std::invalid_argument("regularized_hermitian_solve: G not square");
  if (rhs.rows() != gram.rows())
    throw std::invalid_argument(
        "regularized_hermitian_solve: rhs row count mismatch");
  if (!(reg > 0.0))
    throw std::invalid_argument("regularized_hermitian_solve: reg must be > 0");
  ensure_finite(gram, "G");
  ensure_finite(rhs, "rhs");

  const double asym = (gram - gram.adjoint()).cwiseAbs().maxCoeff();
  const double scale = gram.cwiseAbs().maxCoeff();
  if (asym > 1e-10 * std::max(scale, 1.0))
    throw contract_violation("regularized_hermitian_solve: G not Hermitian");

  // Symmetrize before shifting so rounding in the caller's G cannot leak
  // into the factorization.
  CxMatrix shifted = 0.5 * (gram + gram.adjoint());
  shifted.diagonal().array() += reg;

  Eigen::LLT<CxMatrix> llt(shifted);
  if (llt.info() != Eigen::Success)
    throw contract_violation(
        "regularized_hermitian_solve: factorization failed (G not PSD?)");
  CxMatrix x = llt.solve(rhs);

  // One refinement step keeps the residual at the contract level even for
  // poorly scaled G.
  x += llt.solve(rhs - shifted * x);
  return x;
}

namespace {

// Hermitian eigen-solve of the k x k Gram matrix; shared by the
// least-squares and projection paths so both see the same rank decision.
struct GramFactor {
  Eigen::SelfAdjointEigenSolver<CxMatrix> eig;

  explicit GramFactor(const CxMatrix& basis) : eig() {
    const CxMatrix gram = basis.adjoint() * basis;
    eig.compute(gram);
    if (eig.info() != Eigen::Success)
      throw degenerate_basis_error("gram eigendecomposition failed");
    const auto& ev = eig.eigenvalues();
    const double lo = ev.minCoeff();
    const double hi = ev.maxCoeff();
    if (!(lo > 0.0) || hi / lo > kGramConditionLimit)
      throw degenerate_basis_error("basis is rank deficient (Gram condition "
                                   "number above 1e12)");
  }

  CxVector solve(const CxVector& b) const {
    CxVector t = eig.eigenvectors().adjoint() * b;
    t.array() /= eig.eigenvalues().array();
    return eig.eigenvectors() * t;
  }
};

} // namespace

CxVector least_squares_coefficients(const CxMatrix& basis, const CxVector& x) {
  if (basis.rows() != x.size())
    throw std::invalid_argument("least_squares_coefficients: size mismatch");
  if (basis.cols() > basis.rows())
    throw std::invalid_argument(
        "least_squares_coefficients: more columns than rows");
  ensure_finite(basis, "basis");
  ensure_finite(x, "x");

  GramFactor factor(basis);
  return factor.solve(basis.adjoint() * x);
}

CxVector orthogonal_projector_apply(const CxMatrix& basis, const CxVector& x) {
  return x - basis * least_squares_coefficients(basis, x);
}

} // namespace sdomp
