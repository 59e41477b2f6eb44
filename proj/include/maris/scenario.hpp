#pragma once

#include "maris/channel.hpp"
#include "maris/geometry.hpp"
#include "maris/performance.hpp"
#include "maris/types.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace maris {

// The four simulated array variants: movable or fixed elements, in a linear
// or planar arrangement.
enum class Variant { kMovable1d, kMovable2d, kFixed1d, kFixed2d };

inline constexpr std::array<Variant, 4> kAllVariants = {
    Variant::kMovable1d, Variant::kMovable2d, Variant::kFixed1d,
    Variant::kFixed2d};

const char* variant_tag(Variant variant);  // "MA-1D", "MA-2D", "FPA-1D", "FPA-2D"
bool variant_is_movable(Variant variant);
bool variant_is_planar(Variant variant);

// Full scenario description. Fields keep the units of the configuration file
// (dBm, dB, GHz, degrees, metres, seconds); the *_w()/_rad()/wavelength()
// accessors perform the one-time conversion into SI linear units used by the
// numeric pipeline.
struct ScenarioConfig {
  double tx_x_m = 0.0, tx_y_m = 0.0, tx_z_m = 3.0;   // emitter position
  double rx_x_m = 10.0, rx_y_m = 0.0, rx_z_m = 0.0;  // receiver position
  double panel_x_m = 5.0;      // traversal-span centre x
  double panel_z_m = 0.0;      // panel row centre z
  double y_s_m = 15.0;         // panel plane offset y
  double panel_length_m = 1.0; // traversal span l
  int n_total = 21;            // element count N
  int grid_nx = 7, grid_ny = 3;  // planar grid factorisation
  double carrier_freq_ghz = 4.25;
  double hpbw_deg = 13.8;      // emitter half-power beamwidth
  double noise_dbm = -45.0;
  double tx_power_dbm = 0.0;
  double gamma_th_db = 20.0;   // outage SNR threshold
  double speed_mps = 0.1;      // leftmost-element speed
  int duration_s = 10;         // number of 1 s snapshots T
  double element_dx_m = 0.0;   // element width; 0 = half wavelength
  double element_dy_m = 0.0;   // element height; 0 = half wavelength
  std::uint64_t mc_trials = 1'000'000;
  RngSeed seed = 42;
  double target_outage_log10 = -70.0;  // element-saving search target
  // Sweep grids (inclusive ranges).
  double p_t_min_dbm = -30.0, p_t_max_dbm = 0.0, p_t_step_db = 2.0;
  int n_min = 1, n_max = 61, n_step = 5;
  double y_s_min_m = 1.0, y_s_max_m = 15.0, y_s_step_m = 2.0;

  Vec3 tx() const { return {tx_x_m, tx_y_m, tx_z_m}; }
  Vec3 rx() const { return {rx_x_m, rx_y_m, rx_z_m}; }
  double wavelength() const { return 299'792'458.0 / (carrier_freq_ghz * 1e9); }
  double hpbw_rad() const { return hpbw_deg * std::numbers::pi / 180.0; }
  double noise_w() const { return dbm_to_watts(noise_dbm); }
  double tx_power_w() const { return dbm_to_watts(tx_power_dbm); }
  double gamma_th() const { return db_to_linear(gamma_th_db); }
  double dx() const { return element_dx_m > 0.0 ? element_dx_m : wavelength() / 2.0; }
  double dy() const { return element_dy_m > 0.0 ? element_dy_m : wavelength() / 2.0; }

  // Throws ConfigError with the configuration key and admissible range.
  void validate() const;
};

// One output row of a sweep: the independent variable, the variant, and the
// link metrics at that point.
struct SweepRow {
  std::string indep_name;    // CSV column name of the independent variable
  double indep_value = 0.0;
  Variant variant = Variant::kMovable1d;
  int n_eff = 0;
  double p_r_dbm = 0.0;      // -inf when nothing is received
  double gamma_db = 0.0;     // mean SNR, dB; -inf when nothing is received
  double log10_p_out = 0.0;  // log10 outage probability (<= 0)
};

// Full trace of a single evaluation, for tests and diagnostics.
struct PointResult {
  int n_eff = 0;
  double spacing = 0.0;
  std::optional<IlluminationEllipse> ellipse;  // empty when beam grazes
  std::vector<CascadedElement> elements;       // ordered, centre outwards
  double received_power_w = 0.0;
  double average_snr = 0.0;
  LogProbability outage = LogProbability::certain();
};

// Evaluates one variant at snapshot t_index (1-based, <= duration_s):
// arranges the elements, intersects the illumination footprint, and runs the
// power -> SNR -> outage chain. A grazing footprint yields the zero-
// illumination point (n_eff = 0, no power, certain outage) instead of
// throwing. The config must already be validated.
PointResult evaluate_detail(const ScenarioConfig& config, Variant variant,
                            int t_index);
SweepRow evaluate_point(const ScenarioConfig& config, Variant variant,
                        int t_index);

// Inclusive sweep grids derived from the config ranges.
std::vector<double> power_grid(const ScenarioConfig& config);
std::vector<int> element_grid(const ScenarioConfig& config);
std::vector<double> position_grid(const ScenarioConfig& config);

// Sweeps evaluate every variant (in kAllVariants order) at the final
// snapshot, one row per grid value in ascending order.
std::vector<SweepRow> sweep_power(const ScenarioConfig& config,
                                  const std::vector<double>& p_t_dbm);
std::vector<SweepRow> sweep_elements(const ScenarioConfig& config,
                                     const std::vector<int>& n_values);
std::vector<SweepRow> sweep_position(const ScenarioConfig& config,
                                     const std::vector<double>& y_values);
std::vector<SweepRow> sweep_snr(const ScenarioConfig& config,
                                const std::vector<double>& p_t_dbm);

// Headline movable-vs-fixed comparison. Reference values are the published
// targets the summary is reported against.
struct CompareSummary {
  double outage_improvement = 0.0;  // 1 - P_movable / P_fixed, planar, -20 dBm
  double snr_gap_1d_db = 0.0;       // movable - fixed mean SNR gap at 0 dBm
  double snr_gap_2d_db = 0.0;
  double element_saving_1d = 0.0;   // 1 - N_movable / N_fixed at target outage
  double element_saving_2d = 0.0;   // (NaN when the target is unreachable)

  static constexpr double kReferenceImprovement = 0.24;
  static constexpr double kReferenceGap1dDb = 3.0;
  static constexpr double kReferenceGap2dDb = 2.5;
  static constexpr double kReferenceSaving = 0.25;
};

CompareSummary compare_ma_fpa(const ScenarioConfig& config);

}  // namespace maris
