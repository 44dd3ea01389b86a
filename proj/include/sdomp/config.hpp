#ifndef SDOMP_CONFIG_HPP
#define SDOMP_CONFIG_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdomp/experiment.hpp"

namespace sdomp {

/// Parsed run configuration. File format is INI-style sections
/// ([array], [grid], [sources], [noise], [methods], [beta_schedule]);
/// every key is optional and defaults to the benchmark scenario below.
struct RunConfig {
  Scenario scenario;                       // snr_db is a default, see snr_list
  std::vector<double> snr_list_db{5.0, 10.0, 15.0, 20.0};
  std::vector<Method> methods = all_methods();
  double alpha = 0.01;
  double beta = 0.05;          // fixed beta used when no schedule is given
  bool random_phases = true;
  std::vector<double> fixed_phases_deg;    // aligned with sources when fixed
  std::optional<BetaSchedule> schedule;    // inline [beta_schedule] section
};

/// Loads and validates a config file. Throws config_error on parse or
/// validation failure (missing file included).
RunConfig load_run_config(const std::string& path);

/// Schedule files are the [beta_schedule] section alone: one
/// "<snr_db> = <beta>" pair per line. Points are sorted by SNR on load.
BetaSchedule load_beta_schedule_file(const std::string& path);

std::string beta_schedule_to_ini(const BetaSchedule& schedule);

/// Comma-separated list helpers shared by config and CLI parsing.
std::vector<double> parse_double_list(const std::string& text);
std::vector<std::string> parse_string_list(const std::string& text);

} // namespace sdomp

#endif
