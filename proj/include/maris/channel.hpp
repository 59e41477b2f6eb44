#pragma once

#include "maris/geometry.hpp"
#include "maris/types.hpp"

#include <complex>
#include <vector>

namespace maris {

// Wraps an angle in radians to (-pi, pi].
double wrap_phase(double radians);

// Plane-wave path difference of `position` relative to the origin for a wave
// travelling along `angles`: x sin e cos a + y cos e + z sin e sin a.
double path_difference(const Vec3& position, const LinkAngles& angles);

// Path difference converted to an electrical phase, wrapped to (-pi, pi].
struct PathPhase {
  PathPhase() = default;
  PathPhase(double path_difference_m, double wavelength);

  double path_difference = 0.0;  // m
  double phase = 0.0;            // rad, wrapped
};

// Unit phasor exp(-j 2 pi rho / lambda) for the element at `position`.
std::complex<double> steering_phase(const Vec3& position,
                                    const LinkAngles& angles,
                                    double wavelength);

// Directional power gains of one element:
//  - beam: illumination taper across the footprint, cos^2(pi dphi / (2 hpbw))
//    inside |dphi| < hpbw and zero outside, where dphi is the element's
//    in-plane angle offset from the beam axis;
//  - incidence: element pattern toward the emitter, max(cos^3 phi_in, 0);
//  - departure: element pattern toward the receiver, max(cos^3 phi_out, 0).
struct PatternGains {
  double beam = 0.0;
  double incidence = 0.0;
  double departure = 0.0;
};

// Gains for an element at `element` on a panel centred at `panel_center`,
// re-radiating toward `rx`. The departure angle uses the principal-value
// arctangent of the in-plane coordinate ratio: a quadrant-safe angle would
// fold receivers that sit at smaller y than the panel into the back
// half-space and zero the gain for every geometry of interest.
PatternGains pattern_gains(const Vec3& element, const Vec3& panel_center,
                           const Vec3& rx, double hpbw);

// Reflection phase that aligns one element's cascaded path with the panel
// reference: wrap(2 pi (rho_in_ref + rho_in + rho_out + rho_out_ref) /
// wavelength).
double optimal_phase(double rho_in_ref, double rho_in, double rho_out,
                     double rho_out_ref, double wavelength);

// Everything needed to evaluate one element's contribution to the cascaded
// emitter -> panel -> receiver link.
struct CascadedElement {
  Vec3 position{0.0, 0.0, 0.0};
  PathPhase incident;    // emitter-side path difference (reference + element)
  PathPhase departing;   // receiver-side path difference (element + reference)
  PatternGains gains;
  double dist_tx = 0.0;  // emitter -> element, m
  double dist_rx = 0.0;  // element -> receiver, m
  double applied_phase = 0.0;  // programmed reflection phase, rad
};

// Builds the cascaded description of every element, with the programmed
// phase chosen by optimal_phase so all contributions add coherently.
std::vector<CascadedElement> build_cascaded_elements(
    const Vec3& tx, const Vec3& rx, const Vec3& panel_center,
    const std::vector<Vec3>& positions, double wavelength, double hpbw);

// Coherent sum over the first n_eff elements with per-element fading
// amplitudes: sum_k amplitudes[k] exp(j (applied - incident - departing)).
std::complex<double> cascaded_amplitude(
    const std::vector<CascadedElement>& elements,
    const std::vector<double>& amplitudes, int n_eff);

// Received power of the phase-aligned cascaded link restricted to the first
// n_eff elements:
//   P_t (lambda^2 d_x d_y / 64 pi^3) (sum_k sqrt(gains_k) / (d1_k d2_k))^2.
// The sum runs in a fixed pairwise order for reproducibility.
double received_power(double tx_power_w, double wavelength,
                      const Eigen::Vector2d& element_size,
                      const std::vector<CascadedElement>& elements, int n_eff);

}  // namespace maris
