#ifndef SDOMP_SENSING_HPP
#define SDOMP_SENSING_HPP

#include <optional>
#include <vector>

#include "sdomp/dictionary.hpp"

namespace sdomp {

enum class SensingKind { ideal, semi_blind, non_adaptive, identity };

const char* to_string(SensingKind kind);

/// Companion matrix W used for atom selection (scores |W^H r|) while
/// reconstruction still uses the dictionary A. Every column satisfies the
/// distortionless constraint A_n^H w_n = 1.
class SensingDictionary {
public:
  SensingDictionary(CxMatrix vectors, SensingKind kind,
                    std::optional<double> regularization);

  /// W = A: selection scores reduce to ordinary correlation.
  static SensingDictionary identity(const Dictionary& dict);

  const CxMatrix& vectors() const { return vectors_; }
  SensingKind kind() const { return kind_; }
  std::optional<double> regularization() const { return regularization_; }

  int element_count() const { return static_cast<int>(vectors_.rows()); }
  int atom_count() const { return static_cast<int>(vectors_.cols()); }

private:
  CxMatrix vectors_;
  SensingKind kind_;
  std::optional<double> regularization_;
};

/// Minimum-variance sensing vectors built against the true atoms: with
/// B = dictionary columns at true_support,
///   w_n = (B B^H + alpha I)^{-1} A_n / (A_n^H (B B^H + alpha I)^{-1} A_n).
/// An empty support degenerates to W = A. Requires knowledge of the correct
/// atoms, so this is an oracle-informed reference method.
SensingDictionary ideal_mvdr_sensing(const Dictionary& dict,
                                     const std::vector<int>& true_support,
                                     double alpha);

/// Semi-blindly weighted variant: the interference kernel is built from all
/// atoms weighted by their correlation with the observed signal,
/// weights = |A^H x|, so no support knowledge is needed:
///   w_n = (A diag(weights)^2 A^H + beta I)^{-1} A_n, normalized to
///   A_n^H w_n = 1.
SensingDictionary sbwmvdr_sensing(const Dictionary& dict, const CxVector& x,
                                  double beta);

/// Non-adaptive variant: identity weights, kernel A A^H + beta I.
SensingDictionary nonadaptive_sensing(const Dictionary& dict, double beta);

/// Shared kernel behind the weighted variants: W from C = A diag(weights).
/// sbwmvdr_sensing(dict, x, b) == apply_weight_override(dict, |A^H x|, b)
/// and nonadaptive_sensing(dict, b) == apply_weight_override(dict, ones, b),
/// bit for bit.
SensingDictionary apply_weight_override(const Dictionary& dict,
                                        const RealVector& weights,
                                        double beta);

} // namespace sdomp

#endif
