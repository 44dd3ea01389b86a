#include "sdomp/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace sdomp {

namespace {

constexpr double kDegToRad = 3.14159265358979323846 / 180.0;

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(t, &used);
  } catch (const std::exception&) {
    throw config_error(what + ": cannot parse number '" + text + "'");
  }
  if (used != t.size())
    throw config_error(what + ": trailing characters in number '" + text + "'");
  return value;
}

bool parse_bool(const std::string& text, const std::string& what) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw config_error(what + ": expected a boolean, got '" + text + "'");
}

} // namespace

std::vector<std::string> parse_string_list(const std::string& text) {
  std::vector<std::string> items;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  for (const std::string& item : parse_string_list(text))
    values.push_back(parse_double(item, "list entry"));
  return values;
}

RunConfig load_run_config(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const std::exception& e) {
    throw config_error("cannot read config '" + path + "': " + e.what());
  }

  RunConfig cfg;
  auto get = [&](const char* key) {
    return tree.get_optional<std::string>(key);
  };

  if (auto v = get("array.elements"))
    cfg.scenario.element_count =
        static_cast<int>(parse_double(*v, "array.elements"));
  if (auto v = get("array.spacing_wavelengths"))
    cfg.scenario.spacing_wavelengths =
        parse_double(*v, "array.spacing_wavelengths");

  if (auto v = get("grid.start_deg"))
    cfg.scenario.grid.start_deg = parse_double(*v, "grid.start_deg");
  if (auto v = get("grid.stop_deg"))
    cfg.scenario.grid.stop_deg = parse_double(*v, "grid.stop_deg");
  if (auto v = get("grid.step_deg"))
    cfg.scenario.grid.step_deg = parse_double(*v, "grid.step_deg");

  std::vector<double> magnitudes{1.0, 1.0};
  if (auto v = get("sources.doas_deg"))
    cfg.scenario.source_doas_deg = parse_double_list(*v);
  if (auto v = get("sources.magnitudes")) magnitudes = parse_double_list(*v);
  if (auto v = get("sources.phase_mode")) {
    const std::string mode = trim(*v);
    if (mode == "random")
      cfg.random_phases = true;
    else if (mode == "fixed")
      cfg.random_phases = false;
    else
      throw config_error("sources.phase_mode: expected random or fixed");
  }
  if (auto v = get("sources.phases_deg"))
    cfg.fixed_phases_deg = parse_double_list(*v);

  if (magnitudes.size() != cfg.scenario.source_doas_deg.size())
    throw config_error("sources.magnitudes: count does not match doas_deg");
  if (cfg.fixed_phases_deg.empty())
    cfg.fixed_phases_deg.assign(cfg.scenario.source_doas_deg.size(), 0.0);
  if (cfg.fixed_phases_deg.size() != cfg.scenario.source_doas_deg.size())
    throw config_error("sources.phases_deg: count does not match doas_deg");

  cfg.scenario.source_amplitudes.clear();
  for (std::size_t i = 0; i < magnitudes.size(); ++i)
    cfg.scenario.source_amplitudes.push_back(
        std::polar(magnitudes[i], cfg.fixed_phases_deg[i] * kDegToRad));

  if (auto v = get("noise.snr_db")) cfg.snr_list_db = parse_double_list(*v);
  if (auto v = get("noise.snr_convention"))
    cfg.scenario.snr_convention = snr_convention_from_string(trim(*v));
  if (auto v = get("noise.noiseless"))
    cfg.scenario.noiseless = parse_bool(*v, "noise.noiseless");

  if (auto v = get("methods.run")) {
    cfg.methods.clear();
    for (const std::string& id : parse_string_list(*v))
      cfg.methods.push_back(method_from_string(id));
  }
  if (auto v = get("methods.alpha")) cfg.alpha = parse_double(*v, "methods.alpha");
  if (auto v = get("methods.beta")) cfg.beta = parse_double(*v, "methods.beta");

  if (auto section = tree.get_child_optional("beta_schedule")) {
    BetaSchedule schedule;
    for (const auto& kv : *section)
      schedule.points.push_back(
          {parse_double(kv.first, "beta_schedule snr key"),
           parse_double(kv.second.data(), "beta_schedule beta value")});
    std::sort(schedule.points.begin(), schedule.points.end(),
              [](const auto& a, const auto& b) { return a.snr_db < b.snr_db; });
    schedule.validate();
    cfg.schedule = std::move(schedule);
  }

  if (cfg.snr_list_db.empty())
    throw config_error("noise.snr_db: at least one SNR required");
  if (!(cfg.alpha > 0.0)) throw config_error("methods.alpha must be > 0");
  if (!(cfg.beta > 0.0)) throw config_error("methods.beta must be > 0");
  cfg.scenario.snr_db = cfg.snr_list_db.front();
  cfg.scenario.validate();
  return cfg;
}

BetaSchedule load_beta_schedule_file(const std::string& path) {
  boost::property_tree::ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(path, tree);
  } catch (const std::exception& e) {
    throw config_error("cannot read schedule '" + path + "': " + e.what());
  }
  auto section = tree.get_child_optional("beta_schedule");
  if (!section)
    throw config_error("schedule '" + path + "': missing [beta_schedule]");
  BetaSchedule schedule;
  for (const auto& kv : *section)
    schedule.points.push_back(
        {parse_double(kv.first, "beta_schedule snr key"),
         parse_double(kv.second.data(), "beta_schedule beta value")});
  std::sort(schedule.points.begin(), schedule.points.end(),
            [](const auto& a, const auto& b) { return a.snr_db < b.snr_db; });
  schedule.validate();
  return schedule;
}

std::string beta_schedule_to_ini(const BetaSchedule& schedule) {
  schedule.validate();
  std::string out = "[beta_schedule]\n";
  char buf[96];
  for (const auto& point : schedule.points) {
    std::snprintf(buf, sizeof buf, "%.10g = %.10g\n", point.snr_db,
                  point.beta);
    out += buf;
  }
  return out;
}

} // namespace sdomp
