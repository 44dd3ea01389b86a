#include "sdomp/greedy.hpp"

#include <cmath>

namespace sdomp {

SparseSolution generalized_omp(const CxVector& x, const Dictionary& dict,
                               const SensingDictionary& sensing,
                               const PursuitConfig& config) {
  const int m = dict.element_count();
  const int n_atoms = dict.atom_count();
  if (sensing.element_count() != m || sensing.atom_count() != n_atoms)
    throw std::invalid_argument(
        "generalized_omp: sensing dimensions do not match dictionary");
  if (x.size() != m)
    throw std::invalid_argument("generalized_omp: signal length mismatch");
  if (config.sparsity < 1 || config.sparsity > m)
    throw std::invalid_argument("generalized_omp: sparsity must be in [1, M]");
  if (config.sparsity > n_atoms)
    throw std::invalid_argument(
        "generalized_omp: sparsity exceeds atom count");
  ensure_finite(x, "x");

  const int k_max = config.sparsity;
  std::vector<char> selected(static_cast<std::size_t>(n_atoms), 0);
  std::vector<int> support;
  support.reserve(static_cast<std::size_t>(k_max));

  CxMatrix basis(m, k_max);
  CxVector residual = x;
  for (int k = 0; k < k_max; ++k) {
    // Argmax of |w_n^H r| over unselected atoms; strict > keeps the lowest
    // index on ties. Selected atoms are excluded: with W != A a chosen
    // atom's sensing vector can still correlate with the residual.
    const CxVector scores = sensing.vectors().adjoint() * residual;
    int best = -1;
    double best_score = -1.0;
    for (int n = 0; n < n_atoms; ++n) {
      if (selected[static_cast<std::size_t>(n)]) continue;
      const double s = std::abs(scores[n]);
      if (s > best_score) {
        best_score = s;
        best = n;
      }
    }

    selected[static_cast<std::size_t>(best)] = 1;
    support.push_back(best);
    basis.col(k) = dict.atoms().col(best);
    residual = orthogonal_projector_apply(basis.leftCols(k + 1), x);
  }

  SparseSolution out;
  out.support = std::move(support);
  out.coefficients =
      least_squares_coefficients(basis.leftCols(k_max), x);
  out.residual = std::move(residual);
  out.residual_norm = out.residual.norm();
  out.iterations = k_max;
  return out;
}

SparseSolution ordinary_omp(const CxVector& x, const Dictionary& dict,
                            const PursuitConfig& config) {
  return generalized_omp(x, dict, SensingDictionary::identity(dict), config);
}

} // namespace sdomp
