#pragma once

#include "maris/types.hpp"

#include <utility>
#include <vector>

namespace maris {

enum class Layout { kLinear, kPlanar };
enum class Mobility { kMovable, kFixed };

// Reflecting panel description. The panel lies in the x-z plane at fixed y,
// elements are placed along +x (and stacked in z for planar layouts), and a
// movable panel's leftmost element walks the traversal span over time.
struct PanelGeometry {
  Vec3 center{0.0, 0.0, 0.0};   // traversal-span centre (x_c, y_s, z_c), m
  double span = 1.0;            // traversal span l along x, m
  Layout layout = Layout::kLinear;
  Mobility mobility = Mobility::kMovable;
  int n_total = 1;              // number of elements N
  int grid_nx = 1;              // planar grid columns (along x)
  int grid_ny = 1;              // planar grid rows (along z)
  Eigen::Vector2d element_size{0.0, 0.0};  // physical element size (d_x, d_y), m

  // Throws std::invalid_argument naming the offending field.
  void validate() const;
};

// Per-snapshot state of the element arrangement.
struct MovementState {
  int t_index = 1;       // snapshot index, 1-based
  double speed = 0.0;    // leftmost-element speed, m/s
  double spacing = 0.0;  // inter-element spacing for this snapshot, m
};

// Direction expressed as (elevation from the +y axis, azimuth in the x-z
// plane measured from +x toward +z).
struct LinkAngles {
  double elevation = 0.0;  // in [0, pi]
  double azimuth = 0.0;    // in (-pi, pi]
};

// Illuminated footprint on the panel plane: an ellipse with semi-major axis
// along the panel's x direction.
struct IlluminationEllipse {
  double semi_major = 0.0;  // m
  double semi_minor = 0.0;  // m
  double area = 0.0;        // m^2
  double distance = 0.0;    // emitter -> panel-centre distance, m
  double azimuth = 0.0;     // in-plane angle of the centre seen from emitter
  double elevation = 0.0;   // off-normal angle of the centre seen from emitter
};

// Movable-panel spacing at snapshot t: the leftmost element has advanced by
// (t-1)*speed, and the remaining n-1 gaps shrink from the travelled distance
// relative to the fixed arrangement, clamped to a small positive floor so
// elements never coincide. Requires n_total >= 2, t_index >= 1, speed >= 0.
double ma_spacing(int t_index, double speed, int n_total, double fixed_spacing);

// Element centre positions for one snapshot, ordered row-major (x fastest).
// Movable panels start the leftmost element at center.x - span/2 and advance
// it by (t-1)*speed; fixed panels keep the t = 1 arrangement forever.
std::vector<Vec3> element_positions(const PanelGeometry& panel,
                                    const MovementState& state);

// Angles of the direction from -> to. Throws for coincident points.
LinkAngles direction_angles(const Vec3& from, const Vec3& to);

// Unit propagation vector for the given angles:
// (sin e cos a, cos e, sin e sin a).
Vec3 wave_vector(const LinkAngles& angles);

// Quadrant-safe in-plane angle atan2(x, y): the angle of the point (x, y)
// measured from the +y axis toward +x. Throws at the origin.
double planar_azimuth(double x, double y);

// (emitter -> element, element -> receiver) Euclidean distances; both > 0.
std::pair<double, double> link_distances(const Vec3& tx, const Vec3& element,
                                         const Vec3& rx);

// Footprint of a beam of half-power beamwidth `hpbw` (radians, in (0, pi/2))
// aimed from tx at the panel centre. Throws DegenerateFootprintError when the
// beam grazes the panel plane (semi-axis guards fail) and the footprint is
// unbounded.
IlluminationEllipse illumination_ellipse(const Vec3& tx,
                                         const Vec3& panel_center,
                                         double hpbw);

// Elements covered by the footprint: ceil(axis / spacing) capped at n_total
// for a linear array, ceil(area / (2 spacing^2)) capped at n_total for a
// planar one. Always >= 1 when inputs are valid.
int effective_count_1d(double semi_major, double spacing, int n_total);
int effective_count_2d(double area, double spacing, int n_total);

}  // namespace maris
