#include "sdomp/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sdomp {

namespace {

constexpr double kTieRelTol = 1e-12;
constexpr double kEnumerationBudget = 1e6;

// Strictly better beyond the tie band; scan order supplies the
// lexicographic tie-break.
bool improves(double candidate, double best) {
  return candidate < best * (1.0 - kTieRelTol);
}

OracleResult finalize(const CxVector& x, const Dictionary& dict,
                      std::vector<int> support) {
  CxMatrix basis(dict.element_count(), static_cast<int>(support.size()));
  for (std::size_t i = 0; i < support.size(); ++i)
    basis.col(static_cast<int>(i)) = dict.atoms().col(support[i]);
  OracleResult out;
  out.coefficients = least_squares_coefficients(basis, x);
  out.residual_norm = (x - basis * out.coefficients).norm();
  out.support = std::move(support);
  return out;
}

} // namespace

OracleResult exhaustive_k_term(const CxVector& x, const Dictionary& dict,
                               int k) {
  const int n_atoms = dict.atom_count();
  if (x.size() != dict.element_count())
    throw std::invalid_argument("exhaustive_k_term: signal length mismatch");
  ensure_finite(x, "x");
  if (k != 1 && k != 2)
    throw std::invalid_argument("exhaustive_k_term: k must be 1 or 2");
  if (n_atoms < k)
    throw std::invalid_argument("exhaustive_k_term: fewer atoms than k");
  if (std::pow(static_cast<double>(n_atoms), k) > kEnumerationBudget)
    throw capacity_error("exhaustive_k_term: enumeration budget exceeded");

  const CxVector corr = dict.atoms().adjoint() * x;
  const double energy = x.squaredNorm();

  if (k == 1) {
    int best = 0;
    double best_res = std::sqrt(std::max(0.0, energy - std::norm(corr[0])));
    for (int n = 1; n < n_atoms; ++n) {
      const double res =
          std::sqrt(std::max(0.0, energy - std::norm(corr[n])));
      if (improves(res, best_res)) {
        best_res = res;
        best = n;
      }
    }
    return finalize(x, dict, {best});
  }

  // k == 2: with unit-norm atoms the pair Gram is [[1, g], [g*, 1]], so
  // each candidate costs O(1) after the O(M N^2) Gram precompute.
  const CxMatrix gram = dict.atoms().adjoint() * dict.atoms();
  int best_i = -1, best_j = -1;
  double best_res = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n_atoms; ++i) {
    for (int j = i + 1; j < n_atoms; ++j) {
      const Complex g = gram(i, j);
      const double g2 = std::norm(g);
      // cond([[1,g],[g*,1]]) = (1+|g|)/(1-|g|); skip numerically repeated
      // atoms.
      const double det = 1.0 - g2;
      const double ga = std::sqrt(g2);
      if (det <= 0.0 || (1.0 + ga) / (1.0 - ga) > kGramConditionLimit)
        continue;
      const Complex ci = corr[i], cj = corr[j];
      const Complex si = (ci - g * cj) / det;
      const Complex sj = (cj - std::conj(g) * ci) / det;
      const double explained =
          (std::conj(ci) * si + std::conj(cj) * sj).real();
      const double res = std::sqrt(std::max(0.0, energy - explained));
      if (improves(res, best_res)) {
        best_res = res;
        best_i = i;
        best_j = j;
      }
    }
  }
  if (best_i < 0)
    throw degenerate_basis_error(
        "exhaustive_k_term: every atom pair is degenerate");
  return finalize(x, dict, {best_i, best_j});
}

OracleResult exhaustive_best_up_to(const CxVector& x, const Dictionary& dict,
                                   int k) {
  if (k != 1 && k != 2)
    throw std::invalid_argument("exhaustive_best_up_to: k must be 1 or 2");
  OracleResult best = exhaustive_k_term(x, dict, 1);
  for (int size = 2; size <= k; ++size) {
    OracleResult cand = exhaustive_k_term(x, dict, size);
    if (improves(cand.residual_norm, best.residual_norm)) best = std::move(cand);
  }
  return best;
}

} // namespace sdomp
