#ifndef SDOMP_EXPERIMENT_HPP
#define SDOMP_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include "sdomp/greedy.hpp"
#include "sdomp/oracle.hpp"

namespace sdomp {

enum class Method {
  ordinary_omp,
  sbwmvdr_omp,
  nonadaptive_omp,
  ideal_omp,
  exhaustive_2term,
};

const char* to_string(Method m);
/// Accepts canonical ids plus short aliases (omp, sbwmvdr, nonadaptive,
/// ideal, oracle). Throws config_error for unknown ids.
Method method_from_string(const std::string& id);
std::vector<Method> all_methods();

/// How the SNR value maps to the per-element noise variance sigma^2 given
/// clean energy E = ||A s||^2:
///   total:       sigma^2 = E / (M * 10^(snr/10))  (total signal energy
///                over total noise energy; the default)
///   per_element: sigma^2 = E / 10^(snr/10)        (total signal energy
///                over the single-element noise variance; shifts the SNR
///                axis by 10*log10(M))
enum class SnrConvention { total, per_element };

const char* to_string(SnrConvention c);
SnrConvention snr_convention_from_string(const std::string& id);

/// One synthetic single-snapshot setup: sources, array, grid, noise level.
struct Scenario {
  std::vector<double> source_doas_deg{8.0, 17.0};
  std::vector<Complex> source_amplitudes{Complex(1.0, 0.0), Complex(1.0, 0.0)};
  int element_count = 12;
  double spacing_wavelengths = 0.5;
  AngleGrid grid{0.0, 30.0, 0.2};
  double snr_db = 10.0;
  bool noiseless = false;
  SnrConvention snr_convention = SnrConvention::total;
  std::uint64_t seed = 0;

  int source_count() const {
    return static_cast<int>(source_doas_deg.size());
  }
  /// Throws config_error if DOAs fall outside the grid range, amplitude
  /// count mismatches, or an amplitude is zero.
  void validate() const;
};

/// Clean superposition of the scenario's steering vectors (no noise).
CxVector clean_signal(const Scenario& scenario);

/// x = sum_i amp_i a(phi_i) + v with v circularly-symmetric complex
/// Gaussian, i.i.d. per element, variance per the scenario's SNR
/// convention. Deterministic given the rng state; noise is skipped
/// entirely when scenario.noiseless is set.
CxVector generate_snapshot(const Scenario& scenario, std::mt19937_64& rng);

/// Per-element noise variance implied by the scenario (0 when noiseless).
double noise_variance(const Scenario& scenario);

struct EstimateParams {
  int sources = 2;               // pursuit sparsity K
  double alpha = 0.01;           // ideal_omp regularization
  double beta = 0.05;            // sbwmvdr / nonadaptive regularization
  std::vector<int> true_support; // ideal_omp only: correct grid indices
};

/// Runs one estimation method on a snapshot and maps the selected atoms to
/// grid angles, sorted ascending.
std::vector<double> estimate_doas(const CxVector& x, Method method,
                                  const Dictionary& dict,
                                  const EstimateParams& params);

struct DoaEstimate {
  std::vector<double> angles_deg; // sorted ascending
  std::vector<int> support;       // atom indices, selection order
  double residual_norm = 0.0;     // least-squares fit on the support
};

DoaEstimate estimate_doas_detailed(const CxVector& x, Method method,
                                   const Dictionary& dict,
                                   const EstimateParams& params);

/// Per-source absolute deviations |est_i - truth_i| under the pairing that
/// minimizes the total deviation, so a swapped estimate ordering does not
/// count as error.
std::vector<double> mad_assign(const std::vector<double>& estimated,
                               const std::vector<double>& truth);

/// Piecewise log-linear beta-versus-SNR map, clamped at the end points.
struct BetaSchedule {
  struct Point {
    double snr_db;
    double beta;
  };
  std::vector<Point> points;

  static BetaSchedule constant(double beta);
  void validate() const; // nonempty, snr strictly increasing, betas > 0
};

double beta_for_snr(const BetaSchedule& schedule, double snr_db);

struct MadRow {
  Method method;
  double snr_db;
  int source_index;
  double source_deg;
  double mad_deg;
  int trials;
};

struct MadReport {
  std::vector<MadRow> rows; // method-major, then SNR, then source
  std::uint64_t master_seed = 0;
  int trials = 0;
  BetaSchedule schedule;
  std::string started_at;
  std::string finished_at;
  // Order-independent combine of per-snapshot hashes; equal runs produce
  // equal values regardless of worker count.
  std::uint64_t snapshot_hash = 0;
};

struct MonteCarloSpec {
  Scenario base;      // snr_db/seed fields are overridden per trial
  std::vector<double> snr_list_db{5.0, 10.0, 15.0, 20.0};
  std::vector<Method> methods = all_methods();
  int trials = 500;
  BetaSchedule schedule = BetaSchedule::constant(0.05);
  double alpha = 0.01;
  bool random_phases = true; // i.i.d. uniform phase per source per trial
  std::uint64_t master_seed = 0;
  int workers = 1;
};

/// Runs the paired Monte-Carlo benchmark: per (SNR, trial) one snapshot is
/// shared by every method. Per-trial seeds derive from the master seed, so
/// the report is a pure function of the spec regardless of worker count.
/// Any trial failure aborts the whole run.
MadReport run_monte_carlo(const MonteCarloSpec& spec);

/// CSV with header method,snr_db,source_deg,mad_deg,trials,seed.
void write_mad_csv(std::ostream& out, const MadReport& report);

/// Per-source plot data: header snr_db,<method ids>, one row per SNR.
void write_plot_csv(std::ostream& out, const MadReport& report,
                    int source_index);

/// Deterministic per-trial seed derivation (exposed for tests).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index);

} // namespace sdomp

#endif
