#include "sdomp/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <exception>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

namespace sdomp {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

const char* to_string(Method m) {
  switch (m) {
  case Method::ordinary_omp: return "ordinary_omp";
  case Method::sbwmvdr_omp: return "sbwmvdr_omp";
  case Method::nonadaptive_omp: return "nonadaptive_omp";
  case Method::ideal_omp: return "ideal_omp";
  case Method::exhaustive_2term: return "exhaustive_2term";
  }
  return "unknown";
}

Method method_from_string(const std::string& id) {
  if (id == "ordinary_omp" || id == "omp") return Method::ordinary_omp;
  if (id == "sbwmvdr_omp" || id == "sbwmvdr") return Method::sbwmvdr_omp;
  if (id == "nonadaptive_omp" || id == "nonadaptive")
    return Method::nonadaptive_omp;
  if (id == "ideal_omp" || id == "ideal") return Method::ideal_omp;
  if (id == "exhaustive_2term" || id == "exhaustive" || id == "oracle" ||
      id == "2term")
    return Method::exhaustive_2term;
  throw config_error(
      "unknown method id '" + id +
      "' (valid: ordinary_omp, sbwmvdr_omp, nonadaptive_omp, ideal_omp, "
      "exhaustive_2term)");
}

std::vector<Method> all_methods() {
  return {Method::ordinary_omp, Method::sbwmvdr_omp, Method::nonadaptive_omp,
          Method::ideal_omp, Method::exhaustive_2term};
}

const char* to_string(SnrConvention c) {
  return c == SnrConvention::total ? "total" : "per_element";
}

SnrConvention snr_convention_from_string(const std::string& id) {
  if (id == "total") return SnrConvention::total;
  if (id == "per_element") return SnrConvention::per_element;
  throw config_error("unknown snr convention '" + id +
                     "' (valid: total, per_element)");
}

void Scenario::validate() const {
  grid.validate();
  if (source_doas_deg.empty())
    throw config_error("Scenario: no sources");
  if (source_amplitudes.size() != source_doas_deg.size())
    throw config_error("Scenario: amplitude count != DOA count");
  for (double doa : source_doas_deg)
    if (doa < grid.start_deg || doa > grid.stop_deg)
      throw config_error("Scenario: source DOA outside grid range");
  for (const Complex& a : source_amplitudes)
    if (std::abs(a) == 0.0)
      throw config_error("Scenario: zero source amplitude");
  if (element_count < 2)
    throw config_error("Scenario: need at least 2 array elements");
  if (!(spacing_wavelengths > 0.0))
    throw config_error("Scenario: spacing must be positive");
}

CxVector clean_signal(const Scenario& scenario) {
  CxVector clean = CxVector::Zero(scenario.element_count);
  for (std::size_t i = 0; i < scenario.source_doas_deg.size(); ++i)
    clean += scenario.source_amplitudes[i] *
             ula_steering_vector(scenario.element_count,
                                 scenario.spacing_wavelengths,
                                 scenario.source_doas_deg[i]);
  return clean;
}

double noise_variance(const Scenario& scenario) {
  if (scenario.noiseless) return 0.0;
  const double energy = clean_signal(scenario).squaredNorm();
  const double snr_linear = std::pow(10.0, scenario.snr_db / 10.0);
  if (scenario.snr_convention == SnrConvention::total)
    return energy / (scenario.element_count * snr_linear);
  return energy / snr_linear;
}

CxVector generate_snapshot(const Scenario& scenario, std::mt19937_64& rng) {
  scenario.validate();
  CxVector x = clean_signal(scenario);
  if (scenario.noiseless) return x;
  const double sigma2 = noise_variance(scenario);
  const double component_sigma = std::sqrt(0.5 * sigma2);
  std::normal_distribution<double> gauss(0.0, component_sigma);
  for (int m = 0; m < x.size(); ++m) {
    const double re = gauss(rng);
    const double im = gauss(rng);
    x[m] += Complex(re, im);
  }
  return x;
}

DoaEstimate estimate_doas_detailed(const CxVector& x, Method method,
                                   const Dictionary& dict,
                                   const EstimateParams& params) {
  if (!dict.has_grid())
    throw std::invalid_argument("estimate_doas: dictionary has no grid");
  const int k = params.sources;
  DoaEstimate out;
  switch (method) {
  case Method::ordinary_omp: {
    SparseSolution s = ordinary_omp(x, dict, PursuitConfig{k});
    out.support = std::move(s.support);
    out.residual_norm = s.residual_norm;
    break;
  }
  case Method::sbwmvdr_omp: {
    SensingDictionary w = sbwmvdr_sensing(dict, x, params.beta);
    SparseSolution s = generalized_omp(x, dict, w, PursuitConfig{k});
    out.support = std::move(s.support);
    out.residual_norm = s.residual_norm;
    break;
  }
  case Method::nonadaptive_omp: {
    SensingDictionary w = nonadaptive_sensing(dict, params.beta);
    SparseSolution s = generalized_omp(x, dict, w, PursuitConfig{k});
    out.support = std::move(s.support);
    out.residual_norm = s.residual_norm;
    break;
  }
  case Method::ideal_omp: {
    if (params.true_support.empty())
      throw std::invalid_argument(
          "estimate_doas: ideal_omp requires the true support");
    SensingDictionary w =
        ideal_mvdr_sensing(dict, params.true_support, params.alpha);
    SparseSolution s = generalized_omp(x, dict, w, PursuitConfig{k});
    out.support = std::move(s.support);
    out.residual_norm = s.residual_norm;
    break;
  }
  case Method::exhaustive_2term: {
    if (k != 2)
      throw std::invalid_argument(
          "estimate_doas: exhaustive_2term requires exactly 2 sources");
    OracleResult r = exhaustive_k_term(x, dict, 2);
    out.support = std::move(r.support);
    out.residual_norm = r.residual_norm;
    break;
  }
  }

  out.angles_deg.reserve(out.support.size());
  for (int idx : out.support) out.angles_deg.push_back(dict.angle_of(idx));
  std::sort(out.angles_deg.begin(), out.angles_deg.end());
  return out;
}

std::vector<double> estimate_doas(const CxVector& x, Method method,
                                  const Dictionary& dict,
                                  const EstimateParams& params) {
  return estimate_doas_detailed(x, method, dict, params).angles_deg;
}

std::vector<double> mad_assign(const std::vector<double>& estimated,
                               const std::vector<double>& truth) {
  if (estimated.size() != truth.size())
    throw std::invalid_argument("mad_assign: length mismatch");
  const std::size_t k = truth.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<std::size_t> best = perm;
  double best_total = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i)
      total += std::abs(estimated[perm[i]] - truth[i]);
    if (total < best_total) {
      best_total = total;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<double> devs(k);
  for (std::size_t i = 0; i < k; ++i)
    devs[i] = std::abs(estimated[best[i]] - truth[i]);
  return devs;
}

BetaSchedule BetaSchedule::constant(double beta) {
  return BetaSchedule{{{0.0, beta}}};
}

void BetaSchedule::validate() const {
  if (points.empty()) throw config_error("BetaSchedule: empty schedule");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].beta > 0.0))
      throw config_error("BetaSchedule: beta must be positive");
    if (i > 0 && !(points[i - 1].snr_db < points[i].snr_db))
      throw config_error("BetaSchedule: snr breakpoints must be strictly "
                         "increasing");
  }
}

double beta_for_snr(const BetaSchedule& schedule, double snr_db) {
  schedule.validate();
  const auto& pts = schedule.points;
  if (snr_db <= pts.front().snr_db) return pts.front().beta;
  if (snr_db >= pts.back().snr_db) return pts.back().beta;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (snr_db <= pts[i].snr_db) {
      const double t =
          (snr_db - pts[i - 1].snr_db) / (pts[i].snr_db - pts[i - 1].snr_db);
      const double log_beta = (1.0 - t) * std::log(pts[i - 1].beta) +
                              t * std::log(pts[i].beta);
      return std::exp(log_beta);
    }
  }
  return pts.back().beta; // unreachable
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                          std::uint64_t index) {
  auto finalize = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  std::uint64_t z = finalize(master);
  z = finalize(z ^ (stream * 0xA24BAED4963EE407ULL));
  z = finalize(z ^ (index * 0x9FB21C651E98DF25ULL));
  return z;
}

namespace {

std::string iso8601_now() {
  const std::time_t t =
      std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&t, &tm_utc);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
  return buf;
}

std::uint64_t fnv1a_bytes(const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001B3ULL;
  }
  return h;
}

} // namespace

MadReport run_monte_carlo(const MonteCarloSpec& spec) {
  spec.base.validate();
  spec.schedule.validate();
  if (spec.trials < 1)
    throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
  if (spec.snr_list_db.empty())
    throw std::invalid_argument("run_monte_carlo: empty SNR list");
  if (spec.methods.empty())
    throw std::invalid_argument("run_monte_carlo: no methods selected");

  const std::string started = iso8601_now();
  const Dictionary dict =
      build_ula_dictionary(spec.base.element_count,
                           spec.base.spacing_wavelengths, spec.base.grid);

  const int n_sources = spec.base.source_count();
  const int n_snr = static_cast<int>(spec.snr_list_db.size());
  const int n_methods = static_cast<int>(spec.methods.size());
  const int trials = spec.trials;

  std::vector<int> true_support;
  std::vector<double> truth_angles;
  for (double doa : spec.base.source_doas_deg) {
    const int idx = spec.base.grid.nearest_index(doa);
    true_support.push_back(idx);
    truth_angles.push_back(doa);
  }

  // Per-trial deviations land in preallocated slots; the reduction below
  // runs in fixed trial order so the result is worker-count invariant.
  // Layout: [snr][method][source][trial].
  const std::size_t per_trial =
      static_cast<std::size_t>(n_snr) * n_methods * n_sources;
  std::vector<double> devs(per_trial * static_cast<std::size_t>(trials), 0.0);
  std::vector<std::uint64_t> hashes(
      static_cast<std::size_t>(n_snr) * trials, 0);
  auto slot = [&](int si, int mi, int src, int trial) -> double& {
    return devs[((static_cast<std::size_t>(si) * n_methods + mi) * n_sources +
                 src) *
                    trials +
                trial];
  };

  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto run_trial = [&](int si, int trial) {
    const double snr_db = spec.snr_list_db[si];
    const double beta = beta_for_snr(spec.schedule, snr_db);

    Scenario scenario = spec.base;
    scenario.snr_db = snr_db;
    scenario.seed = derive_seed(spec.master_seed,
                                static_cast<std::uint64_t>(si),
                                static_cast<std::uint64_t>(trial));
    std::mt19937_64 rng(scenario.seed);
    if (spec.random_phases) {
      std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
      for (Complex& amp : scenario.source_amplitudes)
        amp = std::polar(std::abs(amp), uniform(rng));
    }

    // One snapshot per (SNR, trial), shared by every method.
    const CxVector x = generate_snapshot(scenario, rng);
    hashes[static_cast<std::size_t>(si) * trials + trial] =
        fnv1a_bytes(x.data(), sizeof(Complex) * x.size());

    EstimateParams params;
    params.sources = n_sources;
    params.alpha = spec.alpha;
    params.beta = beta;
    params.true_support = true_support;

    for (int mi = 0; mi < n_methods; ++mi) {
      const std::vector<double> est =
          estimate_doas(x, spec.methods[mi], dict, params);
      const std::vector<double> trial_devs = mad_assign(est, truth_angles);
      for (int src = 0; src < n_sources; ++src)
        slot(si, mi, src, trial) = trial_devs[src];
    }
  };

  const long total_jobs = static_cast<long>(n_snr) * trials;
  const int workers =
      std::max(1, std::min<int>(spec.workers, static_cast<int>(total_jobs)));

  auto worker_loop = [&](int worker_index) {
    try {
      for (long job = worker_index; job < total_jobs; job += workers) {
        {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (failure) return;
        }
        run_trial(static_cast<int>(job / trials),
                  static_cast<int>(job % trials));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (workers == 1) {
    worker_loop(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop, w);
    for (std::thread& t : pool) t.join();
  }
  // A failed trial aborts the whole run; dropping trials would bias MAD.
  if (failure) std::rethrow_exception(failure);

  MadReport report;
  report.master_seed = spec.master_seed;
  report.trials = trials;
  report.schedule = spec.schedule;
  report.started_at = started;

  for (int mi = 0; mi < n_methods; ++mi) {
    for (int si = 0; si < n_snr; ++si) {
      for (int src = 0; src < n_sources; ++src) {
        double sum = 0.0;
        for (int trial = 0; trial < trials; ++trial)
          sum += slot(si, mi, src, trial);
        MadRow row;
        row.method = spec.methods[mi];
        row.snr_db = spec.snr_list_db[si];
        row.source_index = src;
        row.source_deg = truth_angles[src];
        row.mad_deg = sum / trials;
        row.trials = trials;
        report.rows.push_back(row);
      }
    }
  }

  std::uint64_t combined = 0;
  for (std::uint64_t h : hashes) combined += h;
  report.snapshot_hash = combined;
  report.finished_at = iso8601_now();
  return report;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

} // namespace

void write_mad_csv(std::ostream& out, const MadReport& report) {
  out << "method,snr_db,source_deg,mad_deg,trials,seed\n";
  for (const MadRow& row : report.rows) {
    out << to_string(row.method) << ',' << format_double(row.snr_db) << ','
        << format_double(row.source_deg) << ',' << format_double(row.mad_deg)
        << ',' << row.trials << ',' << report.master_seed << '\n';
  }
}

void write_plot_csv(std::ostream& out, const MadReport& report,
                    int source_index) {
  // Preserve first-appearance order of methods and SNRs.
  std::vector<Method> methods;
  std::vector<double> snrs;
  for (const MadRow& row : report.rows) {
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
      methods.push_back(row.method);
    if (std::find(snrs.begin(), snrs.end(), row.snr_db) == snrs.end())
      snrs.push_back(row.snr_db);
  }
  std::sort(snrs.begin(), snrs.end());

  out << "snr_db";
  for (Method m : methods) out << ',' << to_string(m);
  out << '\n';
  for (double snr : snrs) {
    out << format_double(snr);
    for (Method m : methods) {
      double value = std::numeric_limits<double>::quiet_NaN();
      for (const MadRow& row : report.rows)
        if (row.method == m && row.snr_db == snr &&
            row.source_index == source_index)
          value = row.mad_deg;
      out << ',' << format_double(value);
    }
    out << '\n';
  }
}

} // namespace sdomp
