#ifndef SDOMP_LINALG_HPP
#define SDOMP_LINALG_HPP

#include <complex>
#include <string>

#include <Eigen/Dense>

#include "sdomp/errors.hpp"

namespace sdomp {

// Complex scalars are double-precision pairs throughout; matrices and
// vectors are dense Eigen values in Eigen's default column-major order.
using Complex = std::complex<double>;
using CxMatrix = Eigen::MatrixXcd;
using CxVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Throws std::invalid_argument if any entry is NaN or infinite.
void ensure_finite(const CxMatrix& m, const std::string& name);
void ensure_finite(const CxVector& v, const std::string& name);

/// Condition number above which a Gram matrix is treated as rank deficient.
inline constexpr double kGramConditionLimit = 1e12;

/// Solves (G + reg*I) X = rhs for Hermitian positive semidefinite G.
///
/// G must be Hermitian to 1e-10 relative tolerance and reg must be > 0,
/// which makes the shifted matrix positive definite; the solve is a
/// Cholesky factorization with the result accurate to a relative residual
/// of 1e-8 or better.
CxMatrix regularized_hermitian_solve(const CxMatrix& gram, double reg,
                                     const CxMatrix& rhs);

/// Least-squares coefficients of x against the columns of basis,
/// computed through the Gram system (basis^H basis) c = basis^H x.
/// Throws degenerate_basis_error if the Gram condition number exceeds
/// kGramConditionLimit.
CxVector least_squares_coefficients(const CxMatrix& basis, const CxVector& x);

/// Applies the projector onto the orthogonal complement of span(basis):
/// returns x - basis * least_squares_coefficients(basis, x).
/// The result r satisfies basis^H r = 0 to 1e-8 absolute.
CxVector orthogonal_projector_apply(const CxMatrix& basis, const CxVector& x);

} // namespace sdomp

#endif
