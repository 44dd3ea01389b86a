// sdomp command-line tool: dictionary inspection, single-shot solves,
// Monte-Carlo benchmarks and beta calibration. Human-readable summaries go
// to stdout; machine-readable CSV/JSON go to files, written atomically.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sdomp/config.hpp"
#include "sdomp/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

void ensure_writable(const fs::path& path) {
  const fs::path probe = path.string() + ".precheck";
  std::ofstream out(probe, std::ios::binary | std::ios::trunc);
  if (!out)
    throw std::runtime_error("output path not writable: '" + path.string() +
                             "'");
  out.close();
  fs::remove(probe);
}

json schedule_to_json(const sdomp::BetaSchedule& schedule) {
  json arr = json::array();
  for (const auto& p : schedule.points)
    arr.push_back({{"snr_db", p.snr_db}, {"beta", p.beta}});
  return arr;
}

json config_to_json(const sdomp::RunConfig& cfg) {
  json sources_mag = json::array();
  json sources_doa = json::array();
  for (std::size_t i = 0; i < cfg.scenario.source_doas_deg.size(); ++i) {
    sources_doa.push_back(cfg.scenario.source_doas_deg[i]);
    sources_mag.push_back(std::abs(cfg.scenario.source_amplitudes[i]));
  }
  json methods = json::array();
  for (sdomp::Method m : cfg.methods) methods.push_back(sdomp::to_string(m));
  json j{
      {"array",
       {{"elements", cfg.scenario.element_count},
        {"spacing_wavelengths", cfg.scenario.spacing_wavelengths}}},
      {"grid",
       {{"start_deg", cfg.scenario.grid.start_deg},
        {"stop_deg", cfg.scenario.grid.stop_deg},
        {"step_deg", cfg.scenario.grid.step_deg}}},
      {"sources",
       {{"doas_deg", sources_doa},
        {"magnitudes", sources_mag},
        {"phase_mode", cfg.random_phases ? "random" : "fixed"},
        {"phases_deg", cfg.fixed_phases_deg}}},
      {"noise",
       {{"snr_db", cfg.snr_list_db},
        {"snr_convention", sdomp::to_string(cfg.scenario.snr_convention)},
        {"noiseless", cfg.scenario.noiseless}}},
      {"methods",
       {{"run", methods}, {"alpha", cfg.alpha}, {"beta", cfg.beta}}},
  };
  if (cfg.schedule) j["beta_schedule"] = schedule_to_json(*cfg.schedule);
  return j;
}

sdomp::Dictionary dictionary_from(const sdomp::RunConfig& cfg) {
  return sdomp::build_ula_dictionary(cfg.scenario.element_count,
                                     cfg.scenario.spacing_wavelengths,
                                     cfg.scenario.grid);
}

std::vector<int> true_support_from(const sdomp::RunConfig& cfg) {
  std::vector<int> support;
  for (double doa : cfg.scenario.source_doas_deg)
    support.push_back(cfg.scenario.grid.nearest_index(doa));
  return support;
}

sdomp::BetaSchedule resolve_schedule(const sdomp::RunConfig& cfg,
                                     const std::string& schedule_path) {
  if (!schedule_path.empty())
    return sdomp::load_beta_schedule_file(schedule_path);
  if (cfg.schedule) return *cfg.schedule;
  return sdomp::BetaSchedule::constant(cfg.beta);
}

int cmd_coherence(const std::string& config_path) {
  const sdomp::RunConfig cfg = sdomp::load_run_config(config_path);
  const sdomp::Dictionary dict = dictionary_from(cfg);
  const sdomp::CoherencePeak peak = sdomp::coherence_peak(dict);
  std::cout << "elements (M):     " << dict.element_count() << "\n"
            << "atoms (N):        " << dict.atom_count() << "\n"
            << "mutual coherence: " << format_double(peak.value) << "\n"
            << "worst pair:       " << format_double(dict.angle_of(peak.first_atom))
            << " deg / " << format_double(dict.angle_of(peak.second_atom))
            << " deg\n";
  return 0;
}

int cmd_solve(const std::string& config_path, const std::string& method_id,
              double snr_db, bool snr_given, std::uint64_t seed,
              const std::string& out_path) {
  sdomp::RunConfig cfg = sdomp::load_run_config(config_path);
  const sdomp::Method method = sdomp::method_from_string(method_id);
  const sdomp::Dictionary dict = dictionary_from(cfg);

  sdomp::Scenario scenario = cfg.scenario;
  scenario.snr_db = snr_given ? snr_db : cfg.snr_list_db.front();
  scenario.seed = seed;

  std::mt19937_64 rng(seed);
  if (cfg.random_phases) {
    std::uniform_real_distribution<double> uniform(0.0, 2.0 * kPi);
    for (sdomp::Complex& amp : scenario.source_amplitudes)
      amp = std::polar(std::abs(amp), uniform(rng));
  }
  const sdomp::CxVector x = sdomp::generate_snapshot(scenario, rng);

  sdomp::EstimateParams params;
  params.sources = scenario.source_count();
  params.alpha = cfg.alpha;
  params.beta = cfg.schedule ? sdomp::beta_for_snr(*cfg.schedule, scenario.snr_db)
                             : cfg.beta;
  params.true_support = true_support_from(cfg);

  const sdomp::DoaEstimate est =
      sdomp::estimate_doas_detailed(x, method, dict, params);

  std::cout << "method:        " << sdomp::to_string(method) << "\n"
            << "snr_db:        "
            << (scenario.noiseless ? "noiseless"
                                   : format_double(scenario.snr_db))
            << "\n"
            << "seed:          " << seed << "\n";
  std::cout << "support:      ";
  for (int idx : est.support) std::cout << ' ' << idx;
  std::cout << "\nangles (deg): ";
  for (double a : est.angles_deg) std::cout << ' ' << format_double(a);
  std::cout << "\nresidual norm: " << format_double(est.residual_norm) << "\n";

  if (!out_path.empty()) {
    std::ostringstream csv;
    csv << "method,snr_db,seed,estimated_deg,residual_norm\n"
        << sdomp::to_string(method) << ',' << format_double(scenario.snr_db)
        << ',' << seed << ',';
    for (std::size_t i = 0; i < est.angles_deg.size(); ++i)
      csv << (i ? ";" : "") << format_double(est.angles_deg[i]);
    csv << ',' << format_double(est.residual_norm) << '\n';
    write_file_atomic(out_path, csv.str());
    std::cout << "csv row:       " << out_path << "\n";
  }
  return 0;
}

void print_summary(const sdomp::MadReport& report) {
  std::vector<double> snrs;
  std::vector<sdomp::Method> methods;
  std::vector<int> sources;
  for (const auto& row : report.rows) {
    if (std::find(snrs.begin(), snrs.end(), row.snr_db) == snrs.end())
      snrs.push_back(row.snr_db);
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end())
      methods.push_back(row.method);
    if (std::find(sources.begin(), sources.end(), row.source_index) ==
        sources.end())
      sources.push_back(row.source_index);
  }
  std::sort(snrs.begin(), snrs.end());

  for (int src : sources) {
    double source_deg = 0.0;
    for (const auto& row : report.rows)
      if (row.source_index == src) source_deg = row.source_deg;
    std::printf("\nMAD (deg), source %d at %g deg, %d trials:\n", src,
                source_deg, report.trials);
    std::printf("%-18s", "method");
    for (double snr : snrs) std::printf(" %9.4g dB", snr);
    std::printf("\n");
    for (sdomp::Method m : methods) {
      std::printf("%-18s", sdomp::to_string(m));
      for (double snr : snrs) {
        double value = NAN;
        for (const auto& row : report.rows)
          if (row.method == m && row.snr_db == snr && row.source_index == src)
            value = row.mad_deg;
        std::printf(" %12.5f", value);
      }
      std::printf("\n");
    }
  }
}

int cmd_benchmark(const std::string& config_path, int trials,
                  std::uint64_t seed, const std::string& out_path,
                  bool plot_data, int workers,
                  const std::string& schedule_path) {
  const auto wall_start = std::chrono::steady_clock::now();
  sdomp::RunConfig cfg = sdomp::load_run_config(config_path);
  const sdomp::BetaSchedule schedule = resolve_schedule(cfg, schedule_path);
  ensure_writable(out_path);

  sdomp::MonteCarloSpec spec;
  spec.base = cfg.scenario;
  spec.snr_list_db = cfg.snr_list_db;
  spec.methods = cfg.methods;
  spec.trials = trials;
  spec.schedule = schedule;
  spec.alpha = cfg.alpha;
  spec.random_phases = cfg.random_phases;
  spec.master_seed = seed;
  spec.workers = workers;

  const sdomp::MadReport report = sdomp::run_monte_carlo(spec);

  std::ostringstream csv;
  sdomp::write_mad_csv(csv, report);
  write_file_atomic(out_path, csv.str());

  const fs::path out(out_path);
  const fs::path stem = out.parent_path() / out.stem();
  json outputs{{"csv", out_path}};
  if (plot_data) {
    for (int src = 0; src < spec.base.source_count(); ++src) {
      std::ostringstream plot;
      sdomp::write_plot_csv(plot, report, src);
      const std::string plot_path =
          stem.string() + "_fig" + std::to_string(src + 1) + ".csv";
      write_file_atomic(plot_path, plot.str());
      outputs["plot_fig" + std::to_string(src + 1)] = plot_path;
    }
  }

  const auto wall_end = std::chrono::steady_clock::now();
  const double wall_seconds =
      std::chrono::duration<double>(wall_end - wall_start).count();

  char hash_hex[32];
  std::snprintf(hash_hex, sizeof hash_hex, "%016llx",
                static_cast<unsigned long long>(report.snapshot_hash));
  json manifest{
      {"tool", "sdomp"},
      {"version", sdomp::kVersion},
      {"command", "benchmark"},
      {"master_seed", seed},
      {"trials", trials},
      {"workers", workers},
      {"started_at", report.started_at},
      {"finished_at", report.finished_at},
      {"wall_seconds", wall_seconds},
      {"snapshot_hash", hash_hex},
      {"schedule_used", schedule_to_json(schedule)},
      {"outputs", outputs},
      {"config", config_to_json(cfg)},
  };
  const std::string manifest_path = stem.string() + ".manifest.json";
  write_file_atomic(manifest_path, manifest.dump(2) + "\n");

  print_summary(report);
  std::cout << "\ncsv:      " << out_path << "\nmanifest: " << manifest_path
            << "\n";
  return 0;
}

int cmd_calibrate_beta(const std::string& config_path,
                       const std::string& grid_spec, int trials,
                       std::uint64_t seed, const std::string& out_path,
                       int workers) {
  sdomp::RunConfig cfg = sdomp::load_run_config(config_path);
  ensure_writable(out_path);

  std::vector<double> beta_grid;
  if (grid_spec.empty()) {
    // 12 log-spaced points across the default admissible range.
    const double lo = 0.005, hi = 0.5;
    const int n = 12;
    for (int i = 0; i < n; ++i)
      beta_grid.push_back(
          lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1)));
  } else {
    beta_grid = sdomp::parse_double_list(grid_spec);
    for (double b : beta_grid) {
      if (!(b > 0.0))
        throw sdomp::config_error("--grid: betas must be positive");
      if (b < 0.005 || b > 0.5)
        std::cerr << "note: beta " << b
                  << " lies outside the default [0.005, 0.5] range\n";
    }
  }

  sdomp::MonteCarloSpec spec;
  spec.base = cfg.scenario;
  spec.methods = {sdomp::Method::sbwmvdr_omp};
  spec.trials = trials;
  spec.alpha = cfg.alpha;
  spec.random_phases = cfg.random_phases;
  spec.master_seed = seed;
  spec.workers = workers;

  sdomp::BetaSchedule calibrated;
  std::printf("%-10s %-12s %-12s\n", "snr_db", "best_beta", "mad_sum_deg");
  for (double snr : cfg.snr_list_db) {
    spec.snr_list_db = {snr};
    double best_beta = beta_grid.front();
    double best_mad = std::numeric_limits<double>::infinity();
    for (double beta : beta_grid) {
      spec.schedule = sdomp::BetaSchedule::constant(beta);
      const sdomp::MadReport report = sdomp::run_monte_carlo(spec);
      double mad_sum = 0.0;
      for (const auto& row : report.rows) mad_sum += row.mad_deg;
      if (mad_sum < best_mad) {
        best_mad = mad_sum;
        best_beta = beta;
      }
    }
    calibrated.points.push_back({snr, best_beta});
    std::printf("%-10g %-12.6g %-12.6g\n", snr, best_beta, best_mad);
  }

  write_file_atomic(out_path, sdomp::beta_schedule_to_ini(calibrated));
  std::cout << "schedule: " << out_path << "\n";
  return 0;
}

int cmd_export_dict(const std::string& config_path,
                    const std::string& out_path) {
  const sdomp::RunConfig cfg = sdomp::load_run_config(config_path);
  const sdomp::Dictionary dict = dictionary_from(cfg);
  ensure_writable(out_path);
  std::ostringstream csv;
  sdomp::export_csv(dict, csv);
  write_file_atomic(out_path, csv.str());
  std::cout << "dictionary csv: " << out_path << " (" << dict.element_count()
            << " x " << dict.atom_count() << ")\n";
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"greedy sparse DOA benchmark with MVDR sensing dictionaries"};
  app.set_version_flag("--version", sdomp::kVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string method_id;
  std::string out_path;
  std::string schedule_path;
  std::string grid_spec;
  std::uint64_t seed = 0;
  double snr_db = 0.0;
  int trials = 500;
  int workers = 1;
  bool plot_data = false;

  auto* coherence =
      app.add_subcommand("coherence", "Print dictionary size and coherence");
  coherence->add_option("--config", config_path, "Config file")->required();

  auto* solve =
      app.add_subcommand("solve", "Run one method on a single snapshot");
  solve->add_option("--config", config_path, "Config file")->required();
  solve->add_option("--method", method_id, "Method id or alias")->required();
  auto* snr_opt = solve->add_option("--snr", snr_db, "SNR in dB");
  solve->add_option("--seed", seed, "RNG seed");
  solve->add_option("--out", out_path, "Optional CSV row output");

  auto* benchmark =
      app.add_subcommand("benchmark", "Monte-Carlo MAD-versus-SNR benchmark");
  benchmark->add_option("--config", config_path, "Config file")->required();
  benchmark->add_option("--trials", trials, "Trials per SNR point");
  benchmark->add_option("--seed", seed, "Master seed");
  benchmark->add_option("--out", out_path, "Output CSV path")->required();
  benchmark->add_flag("--plot-data", plot_data,
                      "Also write per-source plot CSVs");
  benchmark->add_option("--workers", workers, "Worker thread cap");
  benchmark->add_option("--schedule", schedule_path,
                        "Beta schedule file (overrides config)");

  auto* calibrate = app.add_subcommand(
      "calibrate-beta", "Grid-search beta per SNR and write a schedule file");
  calibrate->add_option("--config", config_path, "Config file")->required();
  calibrate->add_option("--grid", grid_spec, "Comma-separated beta grid");
  calibrate->add_option("--trials", trials, "Trials per (SNR, beta) cell");
  calibrate->add_option("--seed", seed, "Master seed");
  calibrate->add_option("--out", out_path, "Output schedule path")->required();
  calibrate->add_option("--workers", workers, "Worker thread cap");

  auto* export_dict = app.add_subcommand(
      "export-dict", "Write the dictionary atoms to CSV for cross-checking");
  export_dict->add_option("--config", config_path, "Config file")->required();
  export_dict->add_option("--out", out_path, "Output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(coherence)) return cmd_coherence(config_path);
    if (app.got_subcommand(solve))
      return cmd_solve(config_path, method_id, snr_db, snr_opt->count() > 0,
                       seed, out_path);
    if (app.got_subcommand(benchmark))
      return cmd_benchmark(config_path, trials, seed, out_path, plot_data,
                           workers, schedule_path);
    if (app.got_subcommand(calibrate))
      return cmd_calibrate_beta(config_path, grid_spec, trials, seed, out_path,
                                workers);
    if (app.got_subcommand(export_dict))
      return cmd_export_dict(config_path, out_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
