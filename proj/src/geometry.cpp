#include "maris/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maris {

namespace {

// Spacing floor: keeps shrunken movable arrangements physically distinct.
constexpr double kMinSpacing = 1e-4;

void check_positive_finite(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw std::domain_error(std::string(what) + " must be > 0 and finite");
  }
}

}  // namespace

void PanelGeometry::validate() const {
  if (!center.allFinite()) {
    throw std::invalid_argument("PanelGeometry: center must be finite");
  }
  if (!(span > 0.0) || !std::isfinite(span)) {
    throw std::invalid_argument("PanelGeometry: span must be > 0");
  }
  if (n_total < 1) {
    throw std::invalid_argument("PanelGeometry: n_total must be >= 1");
  }
  if (layout == Layout::kPlanar) {
    if (grid_nx < 1 || grid_ny < 1) {
      throw std::invalid_argument(
          "PanelGeometry: grid_nx and grid_ny must be >= 1");
    }
    if (static_cast<long long>(grid_nx) * grid_ny < n_total) {
      throw std::invalid_argument(
          "PanelGeometry: grid_nx * grid_ny must cover n_total");
    }
  }
  if (!(element_size.x() > 0.0) || !(element_size.y() > 0.0) ||
      !element_size.allFinite()) {
    throw std::invalid_argument(
        "PanelGeometry: element_size must be positive");
  }
}

double ma_spacing(int t_index, double speed, int n_total,
                  double fixed_spacing) {
  if (n_total < 2) {
    throw std::invalid_argument("ma_spacing requires n_total >= 2");
  }
  if (t_index < 1) {
    throw std::invalid_argument("ma_spacing requires t_index >= 1");
  }
  if (!(speed >= 0.0) || !std::isfinite(speed)) {
    throw std::domain_error("ma_spacing requires speed >= 0");
  }
  if (!(fixed_spacing > 0.0) || !std::isfinite(fixed_spacing)) {
    throw std::domain_error("ma_spacing requires fixed_spacing > 0");
  }
  // The leftmost element has travelled speed * t; the other n-1 gaps give
  // back the fixed arrangement's width as the array compresses.
  const double travelled = speed * static_cast<double>(t_index);
  const double spacing =
      (travelled - (n_total - 1) * fixed_spacing) / (n_total - 1);
  return std::max(spacing, kMinSpacing);
}

std::vector<Vec3> element_positions(const PanelGeometry& panel,
                                    const MovementState& state) {
  panel.validate();
  if (state.t_index < 1) {
    throw std::invalid_argument("element_positions requires t_index >= 1");
  }
  if (!(state.speed >= 0.0) || !std::isfinite(state.speed)) {
    throw std::domain_error("element_positions requires speed >= 0");
  }
  check_positive_finite(state.spacing, "element spacing");

  const double advance = panel.mobility == Mobility::kMovable
                             ? (state.t_index - 1) * state.speed
                             : 0.0;
  const double x0 = panel.center.x() + advance - panel.span / 2.0;

  std::vector<Vec3> positions;
  positions.reserve(static_cast<std::size_t>(panel.n_total));
  if (panel.layout == Layout::kLinear) {
    for (int k = 0; k < panel.n_total; ++k) {
      positions.emplace_back(x0 + k * state.spacing, panel.center.y(),
                             panel.center.z());
    }
    return positions;
  }
  // Planar: row-major fill (x fastest), rows stacked symmetrically about the
  // centre in z with the same spacing.
  const double z0 =
      panel.center.z() - (panel.grid_ny - 1) * state.spacing / 2.0;
  for (int k = 0; k < panel.n_total; ++k) {
    const int row = k / panel.grid_nx;
    const int col = k % panel.grid_nx;
    positions.emplace_back(x0 + col * state.spacing, panel.center.y(),
                           z0 + row * state.spacing);
  }
  return positions;
}

LinkAngles direction_angles(const Vec3& from, const Vec3& to) {
  const Vec3 d = to - from;
  const double norm = d.norm();
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::domain_error("direction_angles requires distinct finite points");
  }
  const double cos_elev = std::clamp(d.y() / norm, -1.0, 1.0);
  return {std::acos(cos_elev), std::atan2(d.z(), d.x())};
}

Vec3 wave_vector(const LinkAngles& angles) {
  const double se = std::sin(angles.elevation);
  return {se * std::cos(angles.azimuth), std::cos(angles.elevation),
          se * std::sin(angles.azimuth)};
}

double planar_azimuth(double x, double y) {
  if (x == 0.0 && y == 0.0) {
    throw std::domain_error("planar_azimuth is undefined at the origin");
  }
  if (!std::isfinite(x) || !std::isfinite(y)) {
    throw std::domain_error("planar_azimuth requires finite coordinates");
  }
  return std::atan2(x, y);
}

std::pair<double, double> link_distances(const Vec3& tx, const Vec3& element,
                                         const Vec3& rx) {
  const double d1 = (element - tx).norm();
  const double d2 = (rx - element).norm();
  if (!(d1 > 0.0) || !(d2 > 0.0) || !std::isfinite(d1) || !std::isfinite(d2)) {
    throw GeometryError("link_distances: co-located endpoints");
  }
  return {d1, d2};
}

IlluminationEllipse illumination_ellipse(const Vec3& tx,
                                         const Vec3& panel_center,
                                         double hpbw) {
  if (!(hpbw > 0.0) || !(hpbw < std::numbers::pi / 2.0)) {
    throw std::domain_error("illumination_ellipse requires hpbw in (0, pi/2)");
  }
  const Vec3 d = panel_center - tx;
  const double distance = d.norm();
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    throw GeometryError(
        "illumination_ellipse: emitter and panel centre coincide");
  }
  const double azimuth = planar_azimuth(d.x(), d.y());
  const double elevation = direction_angles(tx, panel_center).elevation;

  // The footprint closes only while both half-angle rays still cross the
  // panel plane on the far side; otherwise the "ellipse" opens to infinity.
  const double along = std::sin(azimuth + hpbw);
  const double across = std::cos(elevation + hpbw);
  if (!(along > 0.0)) {
    throw DegenerateFootprintError(
        "illumination footprint is unbounded along the panel");
  }
  if (!(across > 0.0)) {
    throw DegenerateFootprintError(
        "illumination footprint is unbounded across the panel");
  }

  IlluminationEllipse ellipse;
  ellipse.distance = distance;
  ellipse.azimuth = azimuth;
  ellipse.elevation = elevation;
  ellipse.semi_major = distance * std::sin(hpbw) / along;
  ellipse.semi_minor = distance * std::sin(hpbw) / across;
  ellipse.area = std::numbers::pi * ellipse.semi_major * ellipse.semi_minor;
  if (!std::isfinite(ellipse.semi_major) || !std::isfinite(ellipse.semi_minor) ||
      !std::isfinite(ellipse.area)) {
    throw DegenerateFootprintError("illumination footprint overflowed");
  }
  return ellipse;
}

namespace {

int covered_count(double ratio, int n_total) {
  if (ratio >= static_cast<double>(n_total)) {
    return n_total;
  }
  return std::max(1, static_cast<int>(std::ceil(ratio)));
}

}  // namespace

int effective_count_1d(double semi_major, double spacing, int n_total) {
  check_positive_finite(semi_major, "semi_major");
  check_positive_finite(spacing, "spacing");
  if (n_total < 1) {
    throw std::invalid_argument("effective_count_1d requires n_total >= 1");
  }
  return covered_count(semi_major / spacing, n_total);
}

int effective_count_2d(double area, double spacing, int n_total) {
  check_positive_finite(area, "area");
  check_positive_finite(spacing, "spacing");
  if (n_total < 1) {
    throw std::invalid_argument("effective_count_2d requires n_total >= 1");
  }
  return covered_count(area / (2.0 * spacing * spacing), n_total);
}

}  // namespace maris
