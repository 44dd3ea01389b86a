#ifndef SDOMP_GREEDY_HPP
#define SDOMP_GREEDY_HPP

#include <vector>

#include "sdomp/sensing.hpp"

namespace sdomp {

/// Result of a K-step pursuit. Support is in selection order; coefficients
/// are the final least-squares fit of the input onto the selected atoms.
struct SparseSolution {
  std::vector<int> support;
  CxVector coefficients;
  CxVector residual;
  double residual_norm = 0.0;
  int iterations = 0;
};

struct PursuitConfig {
  int sparsity = 1; // K, number of atoms to select (1 <= K <= M)

  // The sensing dictionary is built once from the input signal and reused
  // at every iteration; there is no per-residual refresh.
  static constexpr bool reuse_sensing_per_iteration = true;
};

/// Generalized OMP: at step k the atom maximizing |w_n^H r_k| over the
/// not-yet-selected atoms is added (ties broken by lowest index), then the
/// residual is re-projected off the span of the selected dictionary atoms.
/// Selection uses W; reconstruction always uses A.
SparseSolution generalized_omp(const CxVector& x, const Dictionary& dict,
                               const SensingDictionary& sensing,
                               const PursuitConfig& config);

/// Ordinary OMP == generalized OMP with W = A, bit for bit.
SparseSolution ordinary_omp(const CxVector& x, const Dictionary& dict,
                            const PursuitConfig& config);

} // namespace sdomp

#endif
