#include "maris/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace maris {

const char* variant_tag(Variant variant) {
  switch (variant) {
    case Variant::kMovable1d: return "MA-1D";
    case Variant::kMovable2d: return "MA-2D";
    case Variant::kFixed1d: return "FPA-1D";
    case Variant::kFixed2d: return "FPA-2D";
  }
  throw std::invalid_argument("variant_tag: unknown variant");
}

bool variant_is_movable(Variant variant) {
  return variant == Variant::kMovable1d || variant == Variant::kMovable2d;
}

bool variant_is_planar(Variant variant) {
  return variant == Variant::kMovable2d || variant == Variant::kFixed2d;
}

void ScenarioConfig::validate() const {
  const auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(tx_x_m) || !finite(tx_y_m) || !finite(tx_z_m)) {
    throw ConfigError("tx position must be finite");
  }
  if (!finite(rx_x_m) || !finite(rx_y_m) || !finite(rx_z_m)) {
    throw ConfigError("rx position must be finite");
  }
  if ((tx() - rx()).norm() == 0.0) {
    throw ConfigError("tx and rx must not coincide");
  }
  if (!finite(panel_x_m) || !finite(panel_z_m)) {
    throw ConfigError("panel_x_m and panel_z_m must be finite");
  }
  if (!(y_s_m > 0.0) || !finite(y_s_m)) {
    throw ConfigError("y_s_m must be > 0");
  }
  if (!(panel_length_m > 0.0) || !finite(panel_length_m)) {
    throw ConfigError("panel_length_m must be > 0");
  }
  if (n_total < 1) {
    throw ConfigError("n_total must be >= 1");
  }
  if (grid_nx < 1 || grid_ny < 1) {
    throw ConfigError("grid_nx and grid_ny must each be >= 1");
  }
  if (static_cast<long long>(grid_nx) * grid_ny < n_total) {
    throw ConfigError("grid_nx * grid_ny must be >= n_total");
  }
  if (!(carrier_freq_ghz > 0.0) || !finite(carrier_freq_ghz)) {
    throw ConfigError("carrier_freq_ghz must be > 0");
  }
  if (!(hpbw_deg > 0.0) || !(hpbw_deg < 90.0)) {
    throw ConfigError("hpbw_deg must be in (0, 90)");
  }
  if (!finite(noise_dbm)) {
    throw ConfigError("noise_dbm must be finite");
  }
  if (!finite(tx_power_dbm)) {
    throw ConfigError("tx_power_dbm must be finite");
  }
  if (!finite(gamma_th_db)) {
    throw ConfigError("gamma_th_db must be finite");
  }
  if (!(speed_mps >= 0.0) || !finite(speed_mps)) {
    throw ConfigError("speed_mps must be >= 0");
  }
  if (duration_s < 1) {
    throw ConfigError("duration_s must be >= 1");
  }
  if (!(element_dx_m >= 0.0) || !finite(element_dx_m)) {
    throw ConfigError("element_dx_m must be >= 0 (0 = half wavelength)");
  }
  if (!(element_dy_m >= 0.0) || !finite(element_dy_m)) {
    throw ConfigError("element_dy_m must be >= 0 (0 = half wavelength)");
  }
  if (mc_trials < 1000) {
    throw ConfigError("mc_trials must be >= 1000");
  }
  if (!(target_outage_log10 < 0.0) || !finite(target_outage_log10)) {
    throw ConfigError("target_outage_log10 must be < 0");
  }
  if (!finite(p_t_min_dbm) || !finite(p_t_max_dbm) || p_t_min_dbm > p_t_max_dbm) {
    throw ConfigError("p_t_min_dbm must be <= p_t_max_dbm");
  }
  if (!(p_t_step_db > 0.0) || !finite(p_t_step_db)) {
    throw ConfigError("p_t_step_db must be > 0");
  }
  if (n_min < 1 || n_min > n_max) {
    throw ConfigError("n_min must be >= 1 and <= n_max");
  }
  if (n_step < 1) {
    throw ConfigError("n_step must be >= 1");
  }
  if (!(y_s_min_m > 0.0) || !finite(y_s_min_m) || y_s_min_m > y_s_max_m ||
      !finite(y_s_max_m)) {
    throw ConfigError("y_s_min_m must be > 0 and <= y_s_max_m");
  }
  if (!(y_s_step_m > 0.0) || !finite(y_s_step_m)) {
    throw ConfigError("y_s_step_m must be > 0");
  }
}

namespace {

// Zero-illumination point: the beam misses (or grazes past) the panel, so no
// element is excited and the link is in outage with certainty.
PointResult zero_illumination(double spacing) {
  PointResult result;
  result.n_eff = 0;
  result.spacing = spacing;
  result.received_power_w = 0.0;
  result.average_snr = 0.0;
  result.outage = LogProbability::certain();
  return result;
}

}  // namespace

PointResult evaluate_detail(const ScenarioConfig& config, Variant variant,
                            int t_index) {
  if (t_index < 1 || t_index > config.duration_s) {
    throw std::invalid_argument("evaluate_detail: t_index out of [1, duration]");
  }
  const double lambda = config.wavelength();
  const double fixed_spacing = lambda / 2.0;
  const bool movable = variant_is_movable(variant);
  const bool planar = variant_is_planar(variant);

  // A movable array with nothing to move (zero speed or a single element)
  // falls back to the fixed arrangement.
  double spacing = fixed_spacing;
  if (movable && config.speed_mps > 0.0 && config.n_total >= 2) {
    spacing = ma_spacing(t_index, config.speed_mps, config.n_total,
                         fixed_spacing);
  }

  PanelGeometry panel;
  panel.center = Vec3(config.panel_x_m, config.y_s_m, config.panel_z_m);
  panel.span = config.panel_length_m;
  panel.layout = planar ? Layout::kPlanar : Layout::kLinear;
  panel.mobility = movable ? Mobility::kMovable : Mobility::kFixed;
  panel.n_total = config.n_total;
  panel.grid_nx = planar ? config.grid_nx : config.n_total;
  panel.grid_ny = planar ? config.grid_ny : 1;
  panel.element_size = Eigen::Vector2d(config.dx(), config.dy());

  MovementState state;
  state.t_index = t_index;
  state.speed = config.speed_mps;
  state.spacing = spacing;

  IlluminationEllipse ellipse;
  try {
    ellipse = illumination_ellipse(config.tx(), panel.center, config.hpbw_rad());
  } catch (const DegenerateFootprintError&) {
    return zero_illumination(spacing);
  }

  PointResult result;
  result.spacing = spacing;
  result.ellipse = ellipse;
  result.n_eff =
      planar ? effective_count_2d(ellipse.area, spacing, config.n_total)
             : effective_count_1d(ellipse.semi_major, spacing, config.n_total);

  // Illumination covers the footprint centre outwards: keep the elements
  // closest to the panel centre when the footprint truncates the array.
  std::vector<Vec3> positions = element_positions(panel, state);
  std::vector<std::size_t> order(positions.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> dist(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i) {
    dist[i] = (positions[i] - panel.center).norm();
  }
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
  std::vector<Vec3> ordered;
  ordered.reserve(positions.size());
  for (const std::size_t i : order) {
    ordered.push_back(positions[i]);
  }

  result.elements = build_cascaded_elements(
      config.tx(), config.rx(), panel.center, ordered, lambda,
      config.hpbw_rad());
  result.received_power_w =
      received_power(config.tx_power_w(), lambda, panel.element_size,
                     result.elements, result.n_eff);
  result.average_snr = average_snr(result.received_power_w, config.noise_w());
  if (result.average_snr > 0.0) {
    result.outage =
        outage_probability(config.gamma_th(), result.average_snr, result.n_eff)
            .probability;
  } else {
    result.outage = LogProbability::certain();
  }
  return result;
}

namespace {

SweepRow row_from_detail(const PointResult& detail, std::string indep_name,
                         double indep_value, Variant variant) {
  SweepRow row;
  row.indep_name = std::move(indep_name);
  row.indep_value = indep_value;
  row.variant = variant;
  row.n_eff = detail.n_eff;
  row.p_r_dbm = detail.received_power_w > 0.0
                    ? watts_to_dbm(detail.received_power_w)
                    : -std::numeric_limits<double>::infinity();
  row.gamma_db = detail.average_snr > 0.0
                     ? linear_to_db(detail.average_snr)
                     : -std::numeric_limits<double>::infinity();
  row.log10_p_out = detail.outage.log10();
  return row;
}

}  // namespace

SweepRow evaluate_point(const ScenarioConfig& config, Variant variant,
                        int t_index) {
  return row_from_detail(evaluate_detail(config, variant, t_index), "t_index",
                         static_cast<double>(t_index), variant);
}

std::vector<double> power_grid(const ScenarioConfig& config) {
  std::vector<double> grid;
  for (double p = config.p_t_min_dbm; p <= config.p_t_max_dbm + 1e-12;
       p += config.p_t_step_db) {
    grid.push_back(std::min(p, config.p_t_max_dbm));
  }
  return grid;
}

std::vector<int> element_grid(const ScenarioConfig& config) {
  std::vector<int> grid;
  for (int n = config.n_min; n <= config.n_max; n += config.n_step) {
    grid.push_back(n);
  }
  return grid;
}

std::vector<double> position_grid(const ScenarioConfig& config) {
  std::vector<double> grid;
  for (double y = config.y_s_min_m; y <= config.y_s_max_m + 1e-12;
       y += config.y_s_step_m) {
    grid.push_back(std::min(y, config.y_s_max_m));
  }
  return grid;
}

std::vector<SweepRow> sweep_power(const ScenarioConfig& config,
                                  const std::vector<double>& p_t_dbm) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(p_t_dbm.size() * kAllVariants.size());
  for (const Variant variant : kAllVariants) {
    for (const double p : p_t_dbm) {
      ScenarioConfig point = config;
      point.tx_power_dbm = p;
      rows.push_back(row_from_detail(
          evaluate_detail(point, variant, config.duration_s), "p_t_dbm", p,
          variant));
    }
  }
  return rows;
}

std::vector<SweepRow> sweep_elements(const ScenarioConfig& config,
                                     const std::vector<int>& n_values) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(n_values.size() * kAllVariants.size());
  for (const Variant variant : kAllVariants) {
    for (const int n : n_values) {
      if (n < 1) {
        throw std::invalid_argument("sweep_elements: n must be >= 1");
      }
      ScenarioConfig point = config;
      point.n_total = n;
      // Squarest planar factorisation that covers n elements.
      point.grid_nx = static_cast<int>(
          std::ceil(std::sqrt(static_cast<double>(n))));
      point.grid_ny =
          static_cast<int>(std::ceil(static_cast<double>(n) / point.grid_nx));
      rows.push_back(row_from_detail(
          evaluate_detail(point, variant, config.duration_s), "n_total",
          static_cast<double>(n), variant));
    }
  }
  return rows;
}

std::vector<SweepRow> sweep_position(const ScenarioConfig& config,
                                     const std::vector<double>& y_values) {
  config.validate();
  std::vector<SweepRow> rows;
  rows.reserve(y_values.size() * kAllVariants.size());
  for (const Variant variant : kAllVariants) {
    for (const double y : y_values) {
      if (!(y > 0.0) || !std::isfinite(y)) {
        throw std::invalid_argument("sweep_position: y must be > 0");
      }
      ScenarioConfig point = config;
      point.y_s_m = y;
      rows.push_back(row_from_detail(
          evaluate_detail(point, variant, config.duration_s), "y_s_m", y,
          variant));
    }
  }
  return rows;
}

std::vector<SweepRow> sweep_snr(const ScenarioConfig& config,
                                const std::vector<double>& p_t_dbm) {
  return sweep_power(config, p_t_dbm);
}

namespace {

// First grid size whose outage reaches the target, or 0 when unreachable.
int first_n_reaching(const std::vector<SweepRow>& rows, Variant variant,
                     double target_log10) {
  for (const SweepRow& row : rows) {
    if (row.variant == variant && row.log10_p_out <= target_log10) {
      return static_cast<int>(row.indep_value);
    }
  }
  return 0;
}

}  // namespace

CompareSummary compare_ma_fpa(const ScenarioConfig& config) {
  config.validate();
  CompareSummary summary;
  const int t_final = config.duration_s;

  // Outage improvement of the movable planar array at the low-power point.
  ScenarioConfig outage_cfg = config;
  outage_cfg.tx_power_dbm = -20.0;
  const PointResult movable =
      evaluate_detail(outage_cfg, Variant::kMovable2d, t_final);
  const PointResult fixed =
      evaluate_detail(outage_cfg, Variant::kFixed2d, t_final);
  const double ln_ratio = movable.outage.ln() - fixed.outage.ln();
  if (std::isnan(ln_ratio)) {
    summary.outage_improvement = 0.0;  // both links certain or both impossible
  } else {
    summary.outage_improvement = 1.0 - std::exp(ln_ratio);
  }

  // Mean-SNR gaps at the nominal power point.
  ScenarioConfig snr_cfg = config;
  snr_cfg.tx_power_dbm = 0.0;
  const auto gap = [&](Variant a, Variant b) {
    const double ga =
        linear_to_db(evaluate_detail(snr_cfg, a, t_final).average_snr);
    const double gb =
        linear_to_db(evaluate_detail(snr_cfg, b, t_final).average_snr);
    return ga - gb;
  };
  summary.snr_gap_1d_db = gap(Variant::kMovable1d, Variant::kFixed1d);
  summary.snr_gap_2d_db = gap(Variant::kMovable2d, Variant::kFixed2d);

  // Element savings: smallest grid size reaching the target outage.
  ScenarioConfig saving_cfg = config;
  saving_cfg.tx_power_dbm = -20.0;
  const std::vector<SweepRow> rows =
      sweep_elements(saving_cfg, element_grid(config));
  const auto saving = [&](Variant movable_variant, Variant fixed_variant) {
    const int n_movable =
        first_n_reaching(rows, movable_variant, config.target_outage_log10);
    const int n_fixed =
        first_n_reaching(rows, fixed_variant, config.target_outage_log10);
    if (n_movable == 0 || n_fixed == 0) {
      return std::numeric_limits<double>::quiet_NaN();
    }
    return 1.0 - static_cast<double>(n_movable) / n_fixed;
  };
  summary.element_saving_1d =
      saving(Variant::kMovable1d, Variant::kFixed1d);
  summary.element_saving_2d =
      saving(Variant::kMovable2d, Variant::kFixed2d);
  return summary;
}

}  // namespace maris
