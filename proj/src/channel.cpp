#include "maris/channel.hpp"

#include "maris/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace maris {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_wavelength(double wavelength) {
  if (!(wavelength > 0.0) || !std::isfinite(wavelength)) {
    throw std::domain_error("wavelength must be > 0 and finite");
  }
}

// Coherent pairwise sum of complex contributions, fixed order.
std::complex<double> pairwise_sum_complex(
    std::span<const std::complex<double>> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    std::complex<double> total{0.0, 0.0};
    for (const auto& v : values) {
      total += v;
    }
    return total;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_complex(values.first(half)) +
         pairwise_sum_complex(values.subspan(half));
}

}  // namespace

double wrap_phase(double radians) {
  if (!std::isfinite(radians)) {
    throw std::domain_error("wrap_phase requires a finite angle");
  }
  double wrapped = std::remainder(radians, kTwoPi);
  if (wrapped <= -std::numbers::pi) {
    wrapped += kTwoPi;
  }
  return wrapped == 0.0 ? 0.0 : wrapped;  // normalise -0
}

double path_difference(const Vec3& position, const LinkAngles& angles) {
  return position.dot(wave_vector(angles));
}

PathPhase::PathPhase(double path_difference_m, double wavelength) {
  check_wavelength(wavelength);
  if (!std::isfinite(path_difference_m)) {
    throw std::domain_error("PathPhase requires a finite path difference");
  }
  path_difference = path_difference_m;
  phase = wrap_phase(kTwoPi * path_difference_m / wavelength);
}

std::complex<double> steering_phase(const Vec3& position,
                                    const LinkAngles& angles,
                                    double wavelength) {
  const PathPhase p(path_difference(position, angles), wavelength);
  return std::polar(1.0, -p.phase);
}

PatternGains pattern_gains(const Vec3& element, const Vec3& panel_center,
                           const Vec3& rx, double hpbw) {
  if (!(hpbw > 0.0) || !(hpbw < std::numbers::pi / 2.0)) {
    throw std::domain_error("pattern_gains requires hpbw in (0, pi/2)");
  }
  const double phi_element = planar_azimuth(element.x(), element.y());
  const double phi_axis = planar_azimuth(panel_center.x(), panel_center.y());

  PatternGains gains;
  const double dphi = phi_element - phi_axis;
  if (std::abs(dphi) < hpbw) {
    const double c = std::cos(std::numbers::pi * dphi / (2.0 * hpbw));
    gains.beam = c * c;
  }

  const double cos_in = std::cos(phi_element);
  gains.incidence = cos_in > 0.0 ? cos_in * cos_in * cos_in : 0.0;

  // Departure azimuth via the principal-value arctangent of the coordinate
  // ratio; see pattern_gains documentation for why the quadrant-safe form is
  // not used here.
  const double dx = rx.x() - element.x();
  const double dy = rx.y() - element.y();
  double phi_out;
  if (dy == 0.0) {
    if (dx == 0.0) {
      throw GeometryError("pattern_gains: receiver above the element");
    }
    phi_out = std::copysign(std::numbers::pi / 2.0, dx);
  } else {
    phi_out = std::atan(dx / dy);
  }
  const double cos_out = std::cos(phi_out);
  gains.departure = cos_out > 0.0 ? cos_out * cos_out * cos_out : 0.0;
  return gains;
}

double optimal_phase(double rho_in_ref, double rho_in, double rho_out,
                     double rho_out_ref, double wavelength) {
  check_wavelength(wavelength);
  const double total = rho_in_ref + rho_in + rho_out + rho_out_ref;
  if (!std::isfinite(total)) {
    throw std::domain_error("optimal_phase requires finite path differences");
  }
  return wrap_phase(kTwoPi * total / wavelength);
}

std::vector<CascadedElement> build_cascaded_elements(
    const Vec3& tx, const Vec3& rx, const Vec3& panel_center,
    const std::vector<Vec3>& positions, double wavelength, double hpbw) {
  check_wavelength(wavelength);
  const LinkAngles in_ref_angles = direction_angles(tx, panel_center);
  const LinkAngles out_ref_angles = direction_angles(panel_center, rx);
  const double rho_in_ref = path_difference(tx, in_ref_angles);
  const double rho_out_ref = path_difference(rx, out_ref_angles);

  std::vector<CascadedElement> elements;
  elements.reserve(positions.size());
  for (const Vec3& position : positions) {
    CascadedElement element;
    element.position = position;

    const LinkAngles in_angles = direction_angles(tx, position);
    const LinkAngles out_angles = direction_angles(position, rx);
    const double rho_in = path_difference(position, in_angles);
    const double rho_out = path_difference(position, out_angles);

    element.incident = PathPhase(rho_in_ref + rho_in, wavelength);
    element.departing = PathPhase(rho_out + rho_out_ref, wavelength);
    element.applied_phase =
        optimal_phase(rho_in_ref, rho_in, rho_out, rho_out_ref, wavelength);
    element.gains = pattern_gains(position, panel_center, rx, hpbw);
    const auto [d1, d2] = link_distances(tx, position, rx);
    element.dist_tx = d1;
    element.dist_rx = d2;
    elements.push_back(element);
  }
  return elements;
}

std::complex<double> cascaded_amplitude(
    const std::vector<CascadedElement>& elements,
    const std::vector<double>& amplitudes, int n_eff) {
  if (n_eff < 0 || static_cast<std::size_t>(n_eff) > elements.size() ||
      static_cast<std::size_t>(n_eff) > amplitudes.size()) {
    throw std::invalid_argument(
        "cascaded_amplitude: n_eff exceeds available elements");
  }
  std::vector<std::complex<double>> terms;
  terms.reserve(static_cast<std::size_t>(n_eff));
  for (int k = 0; k < n_eff; ++k) {
    const CascadedElement& e = elements[static_cast<std::size_t>(k)];
    const double phase =
        e.applied_phase - e.incident.phase - e.departing.phase;
    terms.push_back(amplitudes[static_cast<std::size_t>(k)] *
                    std::polar(1.0, phase));
  }
  return pairwise_sum_complex(terms);
}

double received_power(double tx_power_w, double wavelength,
                      const Eigen::Vector2d& element_size,
                      const std::vector<CascadedElement>& elements,
                      int n_eff) {
  if (!(tx_power_w >= 0.0) || !std::isfinite(tx_power_w)) {
    throw std::domain_error("received_power requires tx_power_w >= 0");
  }
  check_wavelength(wavelength);
  if (!(element_size.x() > 0.0) || !(element_size.y() > 0.0)) {
    throw std::domain_error("received_power requires positive element size");
  }
  if (n_eff < 0 || static_cast<std::size_t>(n_eff) > elements.size()) {
    throw std::invalid_argument(
        "received_power: n_eff exceeds available elements");
  }
  if (n_eff == 0 || tx_power_w == 0.0) {
    return 0.0;
  }
  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(n_eff));
  for (int k = 0; k < n_eff; ++k) {
    const CascadedElement& e = elements[static_cast<std::size_t>(k)];
    const double gain =
        e.gains.beam * e.gains.incidence * e.gains.departure;
    terms.push_back(std::sqrt(gain) / (e.dist_tx * e.dist_rx));
  }
  const double coherent = pairwise_sum(terms);
  const double pi3 =
      std::numbers::pi * std::numbers::pi * std::numbers::pi;
  const double prefactor = wavelength * wavelength * element_size.x() *
                           element_size.y() / (64.0 * pi3);
  return tx_power_w * prefactor * coherent * coherent;
}

}  // namespace maris
