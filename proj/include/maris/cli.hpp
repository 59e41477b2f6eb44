#pragma once

#include "maris/performance.hpp"
#include "maris/scenario.hpp"
#include "maris/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace maris {

// 64-bit FNV-1a hash, used to fingerprint the configuration bytes.
std::uint64_t fnv1a64(std::string_view bytes);

// Parses `key = value` configuration text (comments start with '#'). Unknown
// keys, duplicates, and malformed values raise ConfigError with the line
// number; missing keys keep their defaults. The result is validated.
ScenarioConfig parse_config(std::string_view text);

// Reads and parses a configuration file. Throws ConfigError if unreadable.
ScenarioConfig load_config(const std::string& path);

// Shortest round-trip decimal rendering of a double ("inf"/"nan" spelled
// out, integral values without a fraction, -0 normalised to 0).
std::string format_number(double value);

std::string render_sweep_csv(const std::vector<SweepRow>& rows);
std::string render_compare_csv(const CompareSummary& summary);

// One row of the analytic-vs-simulated outage calibration table.
struct OutageCheckRow {
  ConsistencyPoint point;
  double analytic_p = 0.0;
  double mc_p = 0.0;
  double mc_std_error = 0.0;
  double z_score = 0.0;
};

std::vector<OutageCheckRow> run_outage_check(const ScenarioConfig& config);
std::string render_outage_check_csv(const std::vector<OutageCheckRow>& rows);

// Reproducibility sidecar written next to every output file.
struct RunManifest {
  std::string experiment;
  std::uint64_t config_digest = 0;
  RngSeed seed = 0;
  std::uint64_t mc_trials = 0;
  std::size_t row_count = 0;
};

std::string render_manifest(const RunManifest& manifest);

inline constexpr char kExperimentNames[][16] = {
    "sweep-power", "sweep-elements", "sweep-position",
    "sweep-snr",   "compare",        "outage-check"};

struct RunOptions {
  std::string experiment;
  std::string config_path;
  std::string output_path;
  std::optional<RngSeed> seed;          // overrides the config when set
  std::optional<std::uint64_t> trials;  // overrides the config when set
  bool quiet = false;
};

// Executes one experiment end to end: load config, apply overrides, run,
// write <output_path> (CSV) and <output_path>.manifest, print a short
// summary to `out` unless quiet. Returns the process exit code (0 on
// success; throws ConfigError / std::exception on failure, exit code 1;
// unknown experiment names return 2).
int run_experiment(const RunOptions& options, std::ostream& out);

}  // namespace maris
