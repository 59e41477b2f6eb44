#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace maris {

using Vec3 = Eigen::Vector3d;

// Seed for the deterministic counter-based generator (see numerics.hpp).
using RngSeed = std::uint64_t;

// A scene whose geometry cannot produce the requested quantity.
struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The illumination footprint degenerates (beam grazes past the panel plane).
struct DegenerateFootprintError : GeometryError {
  using GeometryError::GeometryError;
};

// Malformed or out-of-range configuration input.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// dB/dBm <-> linear conversions. All pipeline internals work in SI watts and
// linear ratios; these helpers are the single conversion boundary.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

inline double linear_to_db(double ratio) {
  if (ratio < 0.0 || std::isnan(ratio)) {
    throw std::domain_error("linear_to_db requires a ratio >= 0");
  }
  return 10.0 * std::log10(ratio);  // ratio == 0 -> -inf
}

inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_linear(dbm); }

inline double watts_to_dbm(double watts) {
  if (watts < 0.0 || std::isnan(watts)) {
    throw std::domain_error("watts_to_dbm requires watts >= 0");
  }
  return 10.0 * std::log10(watts / 1e-3);  // 0 W -> -inf dBm
}

// A probability carried in its natural logarithm so deep tails (1e-300 and
// below in log10) survive without underflow. Invariant: ln_p <= 0, with
// -inf meaning "impossible" and 0 meaning "certain".
class LogProbability {
 public:
  static LogProbability from_ln(double ln_p) {
    if (std::isnan(ln_p)) {
      throw std::domain_error("LogProbability: ln p is NaN");
    }
    if (ln_p > 1e-9) {
      throw std::domain_error("LogProbability: ln p must be <= 0");
    }
    return LogProbability(ln_p < 0.0 ? ln_p : 0.0);
  }
  static LogProbability certain() { return LogProbability(0.0); }
  static LogProbability impossible() {
    return LogProbability(-std::numeric_limits<double>::infinity());
  }

  double ln() const { return ln_p_; }
  double log10() const {
    const double v = ln_p_ / std::numbers::ln10;
    return v == 0.0 ? 0.0 : v;  // normalise -0
  }
  double linear() const { return std::exp(ln_p_); }

 private:
  explicit LogProbability(double ln_p) : ln_p_(ln_p) {}
  double ln_p_;
};

}  // namespace maris
