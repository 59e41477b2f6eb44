#pragma once

#include "maris/numerics.hpp"
#include "maris/types.hpp"

#include <cstdint>
#include <numbers>
#include <span>
#include <vector>

namespace maris {

// Gamma moment-match of the double-Rayleigh per-element amplitude (product of
// two unit-scale Rayleigh variates, mean pi/2, variance (16 - pi^2)/4):
// shape per element and scale of the matched gamma distribution.
inline constexpr double kEtaShape =
    std::numbers::pi * std::numbers::pi /
    (16.0 - std::numbers::pi * std::numbers::pi);
inline constexpr double kEtaScale =
    (16.0 - std::numbers::pi * std::numbers::pi) / (2.0 * std::numbers::pi);

struct SnrResult {
  double average = 0.0;        // mean SNR (linear)
  double instantaneous = 0.0;  // faded SNR for given amplitudes/phases
  double maximum = 0.0;        // perfect-alignment ceiling
};

struct OutageResult {
  LogProbability probability = LogProbability::certain();
  double shape = 0.0;     // gamma shape used, kEtaShape * n_eff
  double argument = 0.0;  // gamma argument sqrt(gamma_th / (kEtaScale^2 avg))
};

struct MonteCarloResult {
  double estimate = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
};

// Mean SNR of a link with received power `received_power_w` over noise power
// `noise_power_w` (both watts, noise > 0).
double average_snr(double received_power_w, double noise_power_w);

// SNR when the first n_eff elements fade with the given amplitudes and
// residual phase errors: avg * |sum_k eta_k exp(j psi_k)|^2.
double instantaneous_snr(double average, std::span<const double> amplitudes,
                         std::span<const double> phase_errors, int n_eff);

SnrResult snr_with_fading(double average, std::span<const double> amplitudes,
                          std::span<const double> phase_errors, int n_eff);

// Outage probability P(SNR < gamma_th) of the n_eff-element coherent sum
// under the gamma moment-match, evaluated in the log domain:
// ln P(kEtaShape n_eff, sqrt(gamma_th / (kEtaScale^2 average))).
OutageResult outage_probability(double gamma_th, double average, int n_eff);

// Small-argument closed form of the same tail, clamped to a valid
// probability: ln P ~ (s/2) ln(gamma_th / (average kEtaScale)) + ln Gamma(s)
// with s = kEtaShape * n_eff. Accurate where the outage is deep.
OutageResult outage_asymptotic(double gamma_th, double average, int n_eff);

// Direct simulation of the same outage event: per trial, draws 2 n_eff
// unit-scale Rayleigh amplitudes, forms the aligned sum of their pairwise
// products, and counts SNR < gamma_th. Trial i uses CounterStream(seed, i),
// so the estimate is bit-identical for any worker count (workers <= 0 picks
// the hardware concurrency). Requires trials >= 1000.
MonteCarloResult outage_monte_carlo(double gamma_th, double average, int n_eff,
                                    std::uint64_t trials, RngSeed seed,
                                    int workers = 0);

// Calibration grid for validating the analytic outage model against
// simulation: (n_eff, average SNR, threshold) triples whose outage lies in
// the body of the distribution, where the gamma moment-match is tight.
struct ConsistencyPoint {
  int n_eff;
  double average;
  double gamma_th;
};

std::span<const ConsistencyPoint> outage_check_points();

}  // namespace maris
