#include "maris/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

namespace maris {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (const char c : bytes) {
    hash ^= static_cast<unsigned char>(c);
    hash *= 1099511628211ull;
  }
  return hash;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto begin = s.find_first_not_of(ws);
  if (begin == std::string_view::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_line(std::size_t line_no, const std::string& message) {
  throw ConfigError("line " + std::to_string(line_no) + ": " + message);
}

template <typename T>
T parse_value(std::string_view value, std::size_t line_no,
              std::string_view key) {
  T out{};
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto result = std::from_chars(first, last, out);
  if (result.ec != std::errc{} || result.ptr != last) {
    fail_line(line_no,
              "invalid number for '" + std::string(key) + "'");
  }
  return out;
}

using DoubleField = double ScenarioConfig::*;
using IntField = int ScenarioConfig::*;
using U64Field = std::uint64_t ScenarioConfig::*;

const std::map<std::string, DoubleField>& double_fields() {
  static const std::map<std::string, DoubleField> fields = {
      {"tx_x_m", &ScenarioConfig::tx_x_m},
      {"tx_y_m", &ScenarioConfig::tx_y_m},
      {"tx_z_m", &ScenarioConfig::tx_z_m},
      {"rx_x_m", &ScenarioConfig::rx_x_m},
      {"rx_y_m", &ScenarioConfig::rx_y_m},
      {"rx_z_m", &ScenarioConfig::rx_z_m},
      {"panel_x_m", &ScenarioConfig::panel_x_m},
      {"panel_z_m", &ScenarioConfig::panel_z_m},
      {"y_s_m", &ScenarioConfig::y_s_m},
      {"panel_length_m", &ScenarioConfig::panel_length_m},
      {"carrier_freq_ghz", &ScenarioConfig::carrier_freq_ghz},
      {"hpbw_deg", &ScenarioConfig::hpbw_deg},
      {"noise_dbm", &ScenarioConfig::noise_dbm},
      {"tx_power_dbm", &ScenarioConfig::tx_power_dbm},
      {"gamma_th_db", &ScenarioConfig::gamma_th_db},
      {"speed_mps", &ScenarioConfig::speed_mps},
      {"element_dx_m", &ScenarioConfig::element_dx_m},
      {"element_dy_m", &ScenarioConfig::element_dy_m},
      {"target_outage_log10", &ScenarioConfig::target_outage_log10},
      {"p_t_min_dbm", &ScenarioConfig::p_t_min_dbm},
      {"p_t_max_dbm", &ScenarioConfig::p_t_max_dbm},
      {"p_t_step_db", &ScenarioConfig::p_t_step_db},
      {"y_s_min_m", &ScenarioConfig::y_s_min_m},
      {"y_s_max_m", &ScenarioConfig::y_s_max_m},
      {"y_s_step_m", &ScenarioConfig::y_s_step_m},
  };
  return fields;
}

const std::map<std::string, IntField>& int_fields() {
  static const std::map<std::string, IntField> fields = {
      {"n_total", &ScenarioConfig::n_total},
      {"grid_nx", &ScenarioConfig::grid_nx},
      {"grid_ny", &ScenarioConfig::grid_ny},
      {"duration_s", &ScenarioConfig::duration_s},
      {"n_min", &ScenarioConfig::n_min},
      {"n_max", &ScenarioConfig::n_max},
      {"n_step", &ScenarioConfig::n_step},
  };
  return fields;
}

const std::map<std::string, U64Field>& u64_fields() {
  static const std::map<std::string, U64Field> fields = {
      {"mc_trials", &ScenarioConfig::mc_trials},
      {"seed", &ScenarioConfig::seed},
  };
  return fields;
}

}  // namespace

ScenarioConfig parse_config(std::string_view text) {
  ScenarioConfig config;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    const std::size_t end = std::min(text.find('\n', begin), text.size());
    ++line_no;
    std::string_view line = text.substr(begin, end - begin);
    begin = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail_line(line_no, "malformed line (expected key = value)");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      fail_line(line_no, "malformed line (expected key = value)");
    }
    if (!seen.insert(key).second) {
      fail_line(line_no, "duplicate key '" + key + "'");
    }
    if (const auto it = double_fields().find(key); it != double_fields().end()) {
      config.*(it->second) = parse_value<double>(value, line_no, key);
    } else if (const auto it2 = int_fields().find(key);
               it2 != int_fields().end()) {
      config.*(it2->second) = parse_value<int>(value, line_no, key);
    } else if (const auto it3 = u64_fields().find(key);
               it3 != u64_fields().end()) {
      config.*(it3->second) = parse_value<std::uint64_t>(value, line_no, key);
    } else {
      fail_line(line_no, "unknown key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

ScenarioConfig load_config(const std::string& path) {
  return parse_config(read_file(path));
}

std::string format_number(double value) {
  if (value == 0.0) {
    return "0";
  }
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

std::string format_int(long long value) { return std::to_string(value); }

void append_sweep_row(std::string& out, const SweepRow& row) {
  out += format_number(row.indep_value);
  out += ',';
  out += variant_tag(row.variant);
  out += ',';
  out += format_int(row.n_eff);
  out += ',';
  out += format_number(row.p_r_dbm);
  out += ',';
  out += format_number(row.gamma_db);
  out += ',';
  out += format_number(row.log10_p_out);
  out += '\n';
}

}  // namespace

std::string render_sweep_csv(const std::vector<SweepRow>& rows) {
  const std::string indep = rows.empty() ? "x" : rows.front().indep_name;
  std::string out = indep + ",variant,n_eff,p_r_dbm,gamma_db,log10_p_out\n";
  for (const SweepRow& row : rows) {
    append_sweep_row(out, row);
  }
  return out;
}

std::string render_compare_csv(const CompareSummary& summary) {
  std::string out = "metric,value,reference\n";
  const auto line = [&out](const char* metric, double value, double reference) {
    out += metric;
    out += ',';
    out += format_number(value);
    out += ',';
    out += format_number(reference);
    out += '\n';
  };
  line("outage_improvement", summary.outage_improvement,
       CompareSummary::kReferenceImprovement);
  line("snr_gap_1d_db", summary.snr_gap_1d_db, CompareSummary::kReferenceGap1dDb);
  line("snr_gap_2d_db", summary.snr_gap_2d_db, CompareSummary::kReferenceGap2dDb);
  line("element_saving_1d", summary.element_saving_1d,
       CompareSummary::kReferenceSaving);
  line("element_saving_2d", summary.element_saving_2d,
       CompareSummary::kReferenceSaving);
  return out;
}

std::vector<OutageCheckRow> run_outage_check(const ScenarioConfig& config) {
  std::vector<OutageCheckRow> rows;
  for (const ConsistencyPoint& point : outage_check_points()) {
    OutageCheckRow row;
    row.point = point;
    row.analytic_p =
        outage_probability(point.gamma_th, point.average, point.n_eff)
            .probability.linear();
    const MonteCarloResult mc =
        outage_monte_carlo(point.gamma_th, point.average, point.n_eff,
                           config.mc_trials, config.seed);
    row.mc_p = mc.estimate;
    row.mc_std_error = mc.std_error;
    row.z_score = mc.std_error > 0.0
                      ? (mc.estimate - row.analytic_p) / mc.std_error
                      : 0.0;
    rows.push_back(row);
  }
  return rows;
}

std::string render_outage_check_csv(const std::vector<OutageCheckRow>& rows) {
  std::string out =
      "n_eff,gamma_bar,gamma_th,analytic_p,mc_p,mc_std_error,z_score\n";
  for (const OutageCheckRow& row : rows) {
    out += format_int(row.point.n_eff);
    out += ',';
    out += format_number(row.point.average);
    out += ',';
    out += format_number(row.point.gamma_th);
    out += ',';
    out += format_number(row.analytic_p);
    out += ',';
    out += format_number(row.mc_p);
    out += ',';
    out += format_number(row.mc_std_error);
    out += ',';
    out += format_number(row.z_score);
    out += '\n';
  }
  return out;
}

std::string render_manifest(const RunManifest& manifest) {
  std::string out;
  out += "tool_version = 0.1.0\n";
  out += "experiment = " + manifest.experiment + "\n";
  char digest[17];
  std::snprintf(digest, sizeof(digest), "%016llx",
                static_cast<unsigned long long>(manifest.config_digest));
  out += "config_digest = fnv1a64:" + std::string(digest) + "\n";
  out += "rng_algorithm = " + std::string(kRngAlgorithm) + "\n";
  out += "seed = " + std::to_string(manifest.seed) + "\n";
  out += "mc_trials = " + std::to_string(manifest.mc_trials) + "\n";
  out += "row_count = " + std::to_string(manifest.row_count) + "\n";
  return out;
}

namespace {

void write_file(const std::string& path, const std::string& content) {
  const std::filesystem::path fs_path(path);
  if (fs_path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(fs_path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write output file '" + path + "'");
  }
  out << content;
  if (!out) {
    throw std::runtime_error("failed writing output file '" + path + "'");
  }
}

bool known_experiment(const std::string& name) {
  for (const auto& candidate : kExperimentNames) {
    if (name == candidate) {
      return true;
    }
  }
  return false;
}

}  // namespace

int run_experiment(const RunOptions& options, std::ostream& out) {
  if (!known_experiment(options.experiment)) {
    out << "unknown experiment '" << options.experiment << "'\n";
    return 2;
  }
  const std::string config_bytes = read_file(options.config_path);
  ScenarioConfig config = parse_config(config_bytes);
  if (options.seed) {
    config.seed = *options.seed;
  }
  if (options.trials) {
    config.mc_trials = *options.trials;
  }
  config.validate();

  RunManifest manifest;
  manifest.experiment = options.experiment;
  manifest.config_digest = fnv1a64(config_bytes);
  manifest.seed = config.seed;
  manifest.mc_trials = config.mc_trials;

  std::string csv;
  std::string summary;
  if (options.experiment == "compare") {
    const CompareSummary result = compare_ma_fpa(config);
    csv = render_compare_csv(result);
    manifest.row_count = 5;
    std::ostringstream s;
    s << "compare: outage_improvement=" << format_number(result.outage_improvement)
      << " snr_gap_1d_db=" << format_number(result.snr_gap_1d_db)
      << " snr_gap_2d_db=" << format_number(result.snr_gap_2d_db)
      << " element_saving_1d=" << format_number(result.element_saving_1d)
      << " element_saving_2d=" << format_number(result.element_saving_2d);
    summary = s.str();
  } else if (options.experiment == "outage-check") {
    const std::vector<OutageCheckRow> rows = run_outage_check(config);
    csv = render_outage_check_csv(rows);
    manifest.row_count = rows.size();
    double max_abs_z = 0.0;
    for (const OutageCheckRow& row : rows) {
      max_abs_z = std::max(max_abs_z, std::abs(row.z_score));
    }
    summary = "outage-check: " + std::to_string(rows.size()) +
              " points, max |z| = " + format_number(max_abs_z);
  } else {
    std::vector<SweepRow> rows;
    if (options.experiment == "sweep-power") {
      rows = sweep_power(config, power_grid(config));
    } else if (options.experiment == "sweep-snr") {
      rows = sweep_snr(config, power_grid(config));
    } else if (options.experiment == "sweep-elements") {
      rows = sweep_elements(config, element_grid(config));
    } else {  // sweep-position
      rows = sweep_position(config, position_grid(config));
    }
    csv = render_sweep_csv(rows);
    manifest.row_count = rows.size();
    summary = options.experiment + ": " + std::to_string(rows.size()) +
              " rows";
  }

  write_file(options.output_path, csv);
  write_file(options.output_path + ".manifest", render_manifest(manifest));
  if (!options.quiet) {
    out << summary << "\n";
    out << "wrote " << options.output_path << " and "
        << options.output_path << ".manifest\n";
  }
  return 0;
}

}  // namespace maris
