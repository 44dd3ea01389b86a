#ifndef SDOMP_ORACLE_HPP
#define SDOMP_ORACLE_HPP

#include <vector>

#include "sdomp/dictionary.hpp"

namespace sdomp {

/// Globally optimal K-term approximation found by enumeration.
struct OracleResult {
  std::vector<int> support; // sorted ascending
  CxVector coefficients;    // aligned with support
  double residual_norm = 0.0;
};

/// Enumerates every support of size exactly k (k in {1, 2}), solves the
/// least squares fit for each, and returns the global minimizer. Residuals
/// within 1e-12 relative are ties, broken by lexicographically smallest
/// support. Pairs whose 2x2 Gram matrix has condition number above 1e12
/// are skipped as degenerate.
///
/// Throws capacity_error when N^k exceeds 1e6 enumeration budget.
OracleResult exhaustive_k_term(const CxVector& x, const Dictionary& dict,
                               int k);

/// Diagnostic variant that lets smaller supports compete: best
/// approximation over all support sizes 1..k. The primary oracle above
/// uses exactly k terms.
OracleResult exhaustive_best_up_to(const CxVector& x, const Dictionary& dict,
                                   int k);

} // namespace sdomp

#endif
