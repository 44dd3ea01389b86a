#include "sdomp/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace sdomp {

const char* to_string(SensingKind kind) {
  switch (kind) {
  case SensingKind::ideal: return "ideal";
  case SensingKind::semi_blind: return "semi_blind";
  case SensingKind::non_adaptive: return "non_adaptive";
  case SensingKind::identity: return "identity";
  }
  return "unknown";
}

SensingDictionary::SensingDictionary(CxMatrix vectors, SensingKind kind,
                                     std::optional<double> regularization)
    : vectors_(std::move(vectors)), kind_(kind),
      regularization_(regularization) {
  ensure_finite(vectors_, "SensingDictionary vectors");
}

SensingDictionary SensingDictionary::identity(const Dictionary& dict) {
  return SensingDictionary(dict.atoms(), SensingKind::identity, std::nullopt);
}

namespace {

// cols * cols^H as an exactly Hermitian dense matrix.
CxMatrix outer_gram(const CxMatrix& cols) {
  const int m = static_cast<int>(cols.rows());
  CxMatrix lower = CxMatrix::Zero(m, m);
  lower.selfadjointView<Eigen::Lower>().rankUpdate(cols);
  return lower.selfadjointView<Eigen::Lower>();
}

// Solves against the shifted kernel once for all N atom right-hand sides
// and normalizes each column to A_n^H w_n = 1. The normalizer
// A_n^H (G + reg I)^{-1} A_n is a positive quadratic form, so the division
// cannot blow up.
CxMatrix mvdr_columns(const Dictionary& dict, const CxMatrix& kernel,
                      double reg) {
  const CxMatrix& atoms = dict.atoms();
  CxMatrix solved = regularized_hermitian_solve(kernel, reg, atoms);
  for (int n = 0; n < solved.cols(); ++n) {
    const Complex denom = atoms.col(n).dot(solved.col(n));
    solved.col(n) /= denom;
  }
  return solved;
}

} // namespace

SensingDictionary ideal_mvdr_sensing(const Dictionary& dict,
                                     const std::vector<int>& true_support,
                                     double alpha) {
  if (!(alpha > 0.0))
    throw std::invalid_argument("ideal_mvdr_sensing: alpha must be > 0");
  std::set<int> unique(true_support.begin(), true_support.end());
  const int m = dict.element_count();
  CxMatrix kernel = CxMatrix::Zero(m, m);
  if (!unique.empty()) {
    CxMatrix correct(m, static_cast<int>(unique.size()));
    int col = 0;
    for (int idx : unique) {
      if (idx < 0 || idx >= dict.atom_count())
        throw std::invalid_argument(
            "ideal_mvdr_sensing: support index out of range");
      correct.col(col++) = dict.atoms().col(idx);
    }
    kernel = outer_gram(correct);
  }
  return SensingDictionary(mvdr_columns(dict, kernel, alpha),
                           SensingKind::ideal, alpha);
}

SensingDictionary apply_weight_override(const Dictionary& dict,
                                        const RealVector& weights,
                                        double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("apply_weight_override: beta must be > 0");
  if (weights.size() != dict.atom_count())
    throw std::invalid_argument(
        "apply_weight_override: weight length mismatch");
  for (int n = 0; n < weights.size(); ++n)
    if (!(weights[n] >= 0.0) || !std::isfinite(weights[n]))
      throw std::invalid_argument(
          "apply_weight_override: weights must be finite and nonnegative");

  // Kernel A D^2 A^H accumulated as (A D)(A D)^H; D is real so the square
  // lands on the weights.
  const CxMatrix kernel = outer_gram(dict.atoms() * weights.asDiagonal());
  const bool uniform = (weights.array() == 1.0).all();
  return SensingDictionary(mvdr_columns(dict, kernel, beta),
                           uniform ? SensingKind::non_adaptive
                                   : SensingKind::semi_blind,
                           beta);
}

SensingDictionary sbwmvdr_sensing(const Dictionary& dict, const CxVector& x,
                                  double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("sbwmvdr_sensing: beta must be > 0");
  RealVector weights = cross_correlation_row(dict, x);
  SensingDictionary w = apply_weight_override(dict, weights, beta);
  return SensingDictionary(w.vectors(), SensingKind::semi_blind, beta);
}

SensingDictionary nonadaptive_sensing(const Dictionary& dict, double beta) {
  if (!(beta > 0.0))
    throw std::invalid_argument("nonadaptive_sensing: beta must be > 0");
  RealVector ones = RealVector::Ones(dict.atom_count());
  SensingDictionary w = apply_weight_override(dict, ones, beta);
  return SensingDictionary(w.vectors(), SensingKind::non_adaptive, beta);
}

} // namespace sdomp
