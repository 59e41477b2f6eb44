// Acceptance gate: one test case per release criterion, each printing a
// single PASS/FAIL line. Tolerances are pinned here and nowhere else.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "maris/channel.hpp"
#include "maris/cli.hpp"
#include "maris/geometry.hpp"
#include "maris/numerics.hpp"
#include "maris/performance.hpp"
#include "maris/scenario.hpp"
#include "maris/types.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace maris;

namespace {

// Collects sub-check failures and prints the single criterion verdict line.
class Verdict {
 public:
  explicit Verdict(int number) : number_(number) {}

  void require(bool ok, const std::string& what) {
    if (!ok) {
      if (!failures_.empty()) {
        failures_ += "; ";
      }
      failures_ += what;
    }
  }

  void note(const std::string& detail) {
    if (!notes_.empty()) {
      notes_ += "; ";
    }
    notes_ += detail;
  }

  bool passed() const { return failures_.empty(); }

  void finish(const std::string& summary) {
    std::string line = "[criterion " + std::to_string(number_) + "] ";
    line += passed() ? "PASS" : "FAIL";
    line += " - " + summary;
    if (!notes_.empty()) {
      line += " (" + notes_ + ")";
    }
    if (!passed()) {
      line += " :: " + failures_;
    }
    std::printf("%s\n", line.c_str());
    std::fflush(stdout);
    CHECK_MESSAGE(passed(), failures_);
  }

 private:
  int number_;
  std::string failures_;
  std::string notes_;
};

std::string fmt(double v) { return format_number(v); }

bool close_abs(double a, double b, double tol) { return std::abs(a - b) <= tol; }

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::abs(b);
}

// 50-term Maclaurin erf oracle, independent of the library implementation.
double erf_series(double z) {
  double sum = 0.0;
  double term = z;  // (-1)^k z^(2k+1) / (k! (2k+1)), starting at k = 0
  double power = z;
  double factorial = 1.0;
  for (int k = 0; k < 50; ++k) {
    if (k > 0) {
      power *= z * z;
      factorial *= static_cast<double>(k);
      term = ((k % 2 == 0) ? 1.0 : -1.0) * power /
             (factorial * (2.0 * k + 1.0));
    }
    sum += term;
  }
  return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path dir = fs::current_path() / "acceptance_scratch";
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

int run_tool(const std::string& args) {
  const fs::path dir = scratch_dir();
  const std::string command = std::string(MA_RIS_SIM_BIN) + " " + args +
                              " >" + (dir / "stdout.txt").string() + " 2>" +
                              (dir / "stderr.txt").string();
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("criterion 1: special-function accuracy") {
  Verdict verdict(1);

  // Log-gamma against high-precision references (relative at large argument,
  // where machine representation of the result dominates).
  verdict.require(close_abs(log_gamma(0.5), 0.5723649429247001, 1e-12),
                  "log_gamma(0.5) off: " + fmt(log_gamma(0.5)));
  verdict.require(close_abs(log_gamma(10.0), 12.801827480081469, 1e-12),
                  "log_gamma(10) off: " + fmt(log_gamma(10.0)));
  verdict.require(close_rel(log_gamma(1e4), 82099.71749644238, 1e-12),
                  "log_gamma(1e4) off: " + fmt(log_gamma(1e4)));

  // Exponential identity: P(1, x) = 1 - e^-x, absolute 1e-12 on [0, 50].
  double worst_exp = 0.0;
  for (double x = 0.0; x <= 50.0; x += 0.25) {
    const double diff =
        std::abs(reg_lower_incomplete_gamma(1.0, x) - (-std::expm1(-x)));
    worst_exp = std::max(worst_exp, diff);
  }
  verdict.require(worst_exp <= 1e-12,
                  "P(1,x) vs 1-exp(-x) worst " + fmt(worst_exp));

  // Error-function identity: P(1/2, x) = erf(sqrt x) against an independent
  // 50-term series oracle, absolute 1e-10 on (0, 6].
  double worst_erf = 0.0;
  for (int j = 1; j <= 60; ++j) {
    const double x = 0.1 * j;
    const double diff = std::abs(reg_lower_incomplete_gamma(0.5, x) -
                                 erf_series(std::sqrt(x)));
    worst_erf = std::max(worst_erf, diff);
  }
  verdict.require(worst_erf <= 1e-10,
                  "P(1/2,x) vs erf oracle worst " + fmt(worst_erf));

  // Recurrence P(s, x) - P(s+1, x) = x^s e^-x / Gamma(s+1) on 1000 pinned
  // pseudo-random points; tolerance 1e-9 relative to the right-hand side
  // plus a few-ulp floor for the cancellation on the left.
  CounterStream stream(123, 0);
  int recurrence_failures = 0;
  double worst_ratio = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int i = 0; i < 1000; ++i) {
    const double s = 0.5 + 49.5 * stream.next_unit();
    const double x = 0.1 + 49.9 * stream.next_unit();
    const double lhs = reg_lower_incomplete_gamma(s, x) -
                       reg_lower_incomplete_gamma(s + 1.0, x);
    const double rhs = std::exp(s * std::log(x) - x - log_gamma(s + 1.0));
    const double tol =
        1e-9 * rhs + 8.0 * eps * reg_lower_incomplete_gamma(s, x);
    const double err = std::abs(lhs - rhs);
    if (err > tol) {
      ++recurrence_failures;
      worst_ratio = std::max(worst_ratio, err / tol);
    }
  }
  verdict.require(recurrence_failures == 0,
                  std::to_string(recurrence_failures) +
                      "/1000 recurrence points out of tolerance (worst " +
                      fmt(worst_ratio) + "x)");

  // Deep lower tail in the log domain, relative 1e-8.
  verdict.require(close_rel(log_reg_lower_incomplete_gamma(33.8, 1e-3),
                            -321.35630916346720, 1e-8),
                  "ln P(33.8,1e-3) off");
  verdict.require(close_rel(log_reg_lower_incomplete_gamma(160.9944, 2.5),
                            -515.50455988351235, 1e-8),
                  "ln P(160.9944,2.5) off");

  verdict.note("worst |P(1,x)-(1-e^-x)| " + fmt(worst_exp) +
               ", worst erf diff " + fmt(worst_erf));
  verdict.finish("special functions within pinned tolerances");
}

TEST_CASE("criterion 2: Monte Carlo vs analytic outage consistency") {
  Verdict verdict(2);

  const std::uint64_t trials = 10'000'000;
  const RngSeed seed = 42;
  double worst_margin = 0.0;
  int index = 0;
  for (const ConsistencyPoint& point : outage_check_points()) {
    const double analytic =
        outage_probability(point.gamma_th, point.average, point.n_eff)
            .probability.linear();
    // The suite must span moderate to near-certain outage levels; allow a
    // few ulp of round-trip noise at the band edges the points were solved
    // to land on.
    verdict.require(analytic >= 1e-3 * (1.0 - 1e-12) &&
                        analytic <= 0.9 * (1.0 + 1e-12),
                    "point " + std::to_string(index) +
                        " outside probability band [1e-3, 0.9]: p = " +
                        fmt(analytic));
    const MonteCarloResult mc = outage_monte_carlo(
        point.gamma_th, point.average, point.n_eff, trials, seed);
    // Agreement within max(3 binomial standard errors, 2% relative). The
    // relative floor covers the small moment-matching error of the gamma
    // model against exact double-Rayleigh statistics at low element counts,
    // which 1e7 trials can otherwise resolve.
    const double se = std::sqrt(analytic * (1.0 - analytic) /
                                static_cast<double>(trials));
    const double tolerance = std::max(3.0 * se, 0.02 * analytic);
    const double err = std::abs(mc.estimate - analytic);
    worst_margin = std::max(worst_margin, err / tolerance);
    verdict.require(err <= tolerance,
                    "point " + std::to_string(index) + " (n_eff " +
                        std::to_string(point.n_eff) + ", gamma_th " +
                        fmt(point.gamma_th) + "): |mc - analytic| = " +
                        fmt(err) + " > " + fmt(tolerance));
    ++index;
  }
  verdict.note("20 points, 1e7 trials each, worst error/tolerance = " +
               fmt(worst_margin));
  verdict.finish(
      "simulated outage matches the analytic model within max(3 SE, 2%)");
}

TEST_CASE("criterion 3: fading product moment match") {
  Verdict verdict(3);

  // Mean and variance of the per-element fading product eta = alpha * beta
  // (independent Rayleigh amplitudes, scale 1) over 1e7 single-trial
  // streams: targets pi/2 and (16 - pi^2)/4 within 1%.
  const std::uint64_t trials = 10'000'000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    CounterStream stream(42, trial);
    const double eta =
        rayleigh_sample(1.0, stream) * rayleigh_sample(1.0, stream);
    sum += eta;
    sum_sq += eta * eta;
  }
  const double mean = sum / static_cast<double>(trials);
  const double variance = sum_sq / static_cast<double>(trials) - mean * mean;
  const double mean_target = std::numbers::pi / 2.0;
  const double var_target =
      (16.0 - std::numbers::pi * std::numbers::pi) / 4.0;
  verdict.require(close_rel(mean, mean_target, 0.01),
                  "fading mean " + fmt(mean) + " vs " + fmt(mean_target));
  verdict.require(close_rel(variance, var_target, 0.01),
                  "fading variance " + fmt(variance) + " vs " +
                      fmt(var_target));

  verdict.note("mean " + fmt(mean) + ", variance " + fmt(variance));
  verdict.finish("sampled fading product matches its model moments within 1%");
}

TEST_CASE("criterion 4: analytic outage references and tail behaviour") {
  Verdict verdict(4);

  verdict.require(close_rel(kEtaShape, 1.6099457599185225, 1e-15),
                  "shape constant off: " + fmt(kEtaShape));
  verdict.require(close_rel(kEtaScale, 0.9756827626754288, 1e-15),
                  "scale constant off: " + fmt(kEtaScale));

  const double body = outage_probability(25.0, 1.0, 4).probability.ln();
  verdict.require(close_rel(body, -1.0916124488137716, 1e-10),
                  "ln P_out(25, 1, 4) off: " + fmt(body));

  const double tail = outage_probability(1e-6, 1.0, 1).probability.ln();
  verdict.require(close_rel(tail, -11.447014918656419, 1e-10),
                  "ln P_out(1e-6, 1, 1) off: " + fmt(tail));

  const double asym = outage_asymptotic(1e-6, 1.0, 1).probability.log10();
  verdict.require(close_rel(asym, -4.8695661643646635, 1e-10),
                  "asymptotic log10 P_out(1e-6, 1, 1) off: " + fmt(asym));

  // Tail slope of the asymptote matches the exact curve within 2%.
  const double window = std::log(1e-10) - std::log(1e-8);
  const double exact_slope =
      (outage_probability(1e-10, 1.0, 2).probability.ln() -
       outage_probability(1e-8, 1.0, 2).probability.ln()) /
      window;
  const double asym_slope =
      (outage_asymptotic(1e-10, 1.0, 2).probability.ln() -
       outage_asymptotic(1e-8, 1.0, 2).probability.ln()) /
      window;
  verdict.require(close_rel(exact_slope, asym_slope, 0.02),
                  "tail slopes diverge: exact " + fmt(exact_slope) +
                      " vs asymptotic " + fmt(asym_slope));

  // The expansion never reports a probability above one.
  for (double gamma_th = 1e-8; gamma_th <= 1e8; gamma_th *= 10.0) {
    for (int n = 1; n <= 8; n *= 2) {
      verdict.require(
          outage_asymptotic(gamma_th, 1.0, n).probability.ln() <= 0.0,
          "asymptotic exceeded certainty at gamma_th " + fmt(gamma_th));
    }
  }

  verdict.finish("analytic outage model reproduces its pinned references");
}

TEST_CASE("criterion 5: panel-offset sweep structure") {
  Verdict verdict(5);

  const ScenarioConfig config;
  const auto rows = sweep_position(config, position_grid(config));
  verdict.require(rows.size() == 32, "expected 32 rows, got " +
                                         std::to_string(rows.size()));

  for (const SweepRow& row : rows) {
    if (row.indep_value == 1.0) {
      // Grazing offset: the footprint is unbounded, nothing is illuminated,
      // and the link is flagged as a certain outage instead of crashing.
      verdict.require(row.n_eff == 0, std::string(variant_tag(row.variant)) +
                                          " at y=1 not zero-illumination");
      verdict.require(row.log10_p_out == 0.0,
                      std::string(variant_tag(row.variant)) +
                          " at y=1 outage not certain");
    } else {
      verdict.require(row.n_eff == config.n_total,
                      std::string(variant_tag(row.variant)) + " at y=" +
                          fmt(row.indep_value) + " not saturated: n_eff " +
                          std::to_string(row.n_eff));
    }
  }

  // The mean SNR peaks strictly inside the evaluable offsets.
  std::string argmax_notes;
  for (int v = 0; v < 4; ++v) {
    double best_y = 0.0;
    double best_gamma = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < 8; ++j) {
      const SweepRow& row = rows[static_cast<std::size_t>(v * 8 + j)];
      if (row.gamma_db > best_gamma) {
        best_gamma = row.gamma_db;
        best_y = row.indep_value;
      }
    }
    verdict.require(best_y > 3.0 && best_y < 15.0,
                    std::string(variant_tag(kAllVariants[v])) +
                        " SNR peak at boundary y=" + fmt(best_y));
    if (!argmax_notes.empty()) {
      argmax_notes += ", ";
    }
    argmax_notes += std::string(variant_tag(kAllVariants[v])) + " peak y=" +
                    fmt(best_y);
  }
  verdict.note(argmax_notes);
  verdict.finish("offset sweep handles grazing rows and peaks interior");
}

TEST_CASE("criterion 6: headline movable-vs-fixed advantages") {
  Verdict verdict(6);

  const ScenarioConfig config;
  const CompareSummary summary = compare_ma_fpa(config);

  verdict.require(summary.outage_improvement >= 0.05 &&
                      summary.outage_improvement <= 0.60,
                  "outage improvement " + fmt(summary.outage_improvement) +
                      " outside [0.05, 0.60]");
  verdict.require(summary.snr_gap_1d_db >= 0.5 && summary.snr_gap_1d_db <= 6.0,
                  "1D SNR gap " + fmt(summary.snr_gap_1d_db) +
                      " dB outside [0.5, 6]");
  verdict.require(summary.snr_gap_2d_db >= 0.5 && summary.snr_gap_2d_db <= 6.0,
                  "2D SNR gap " + fmt(summary.snr_gap_2d_db) +
                      " dB outside [0.5, 6]");
  verdict.require(summary.element_saving_1d >= 0.10 &&
                      summary.element_saving_1d <= 0.50,
                  "1D element saving " + fmt(summary.element_saving_1d) +
                      " outside [0.10, 0.50]");
  verdict.require(summary.element_saving_2d >= 0.10 &&
                      summary.element_saving_2d <= 0.50,
                  "2D element saving " + fmt(summary.element_saving_2d) +
                      " outside [0.10, 0.50]");

  verdict.note("improvement " + fmt(summary.outage_improvement) + ", gaps " +
               fmt(summary.snr_gap_1d_db) + "/" + fmt(summary.snr_gap_2d_db) +
               " dB, savings " + fmt(summary.element_saving_1d) + "/" +
               fmt(summary.element_saving_2d));
  verdict.finish("headline advantages inside the published ranges");
}

TEST_CASE("criterion 7: end-to-end reproducibility and exit codes") {
  Verdict verdict(7);

  // Library-level: identical inputs render identical bytes.
  const ScenarioConfig config;
  const std::string csv_a = render_sweep_csv(sweep_power(config, power_grid(config)));
  const std::string csv_b = render_sweep_csv(sweep_power(config, power_grid(config)));
  verdict.require(csv_a == csv_b, "library sweep render not reproducible");

  // Monte Carlo estimates are a pure function of (seed, trials): invariant
  // under the worker count and across reruns.
  const double gamma_th = 5.002854505078253;
  const MonteCarloResult w1 =
      outage_monte_carlo(gamma_th, 1.0, 2, 100000, 42, 1);
  const MonteCarloResult w4 =
      outage_monte_carlo(gamma_th, 1.0, 2, 100000, 42, 4);
  const MonteCarloResult re =
      outage_monte_carlo(gamma_th, 1.0, 2, 100000, 42, 1);
  verdict.require(w1.estimate == w4.estimate,
                  "estimate changed with worker count");
  verdict.require(w1.estimate == re.estimate, "estimate changed across reruns");

  // Tool-level: byte-identical outputs across reruns.
  const fs::path dir = scratch_dir();
  {
    std::ofstream cfg(dir / "defaults.cfg", std::ios::binary);
    cfg << "# default scenario\n";
  }
  const std::string base = "sweep-elements --config " +
                           (dir / "defaults.cfg").string() + " --output ";
  const fs::path out_a = dir / "elements_a.csv";
  const fs::path out_b = dir / "elements_b.csv";
  verdict.require(run_tool(base + out_a.string() + " --quiet") == 0,
                  "first tool run failed");
  verdict.require(run_tool(base + out_b.string() + " --quiet") == 0,
                  "second tool run failed");
  const std::string file_a = read_text(out_a);
  verdict.require(!file_a.empty() && file_a == read_text(out_b),
                  "tool CSV not byte-identical across reruns");
  const std::string manifest = read_text(out_a.string() + ".manifest");
  verdict.require(manifest == read_text(out_b.string() + ".manifest"),
                  "tool manifest not byte-identical across reruns");
  verdict.require(manifest.find("rng_algorithm = splitmix64-substream/v1") !=
                      std::string::npos,
                  "manifest missing generator identifier");
  verdict.require(manifest.find("config_digest = fnv1a64:") !=
                      std::string::npos,
                  "manifest missing config digest");

  // Seed overrides are recorded.
  const fs::path out_seeded = dir / "elements_seeded.csv";
  verdict.require(
      run_tool(base + out_seeded.string() + " --seed 9 --quiet") == 0,
      "seeded tool run failed");
  verdict.require(read_text(out_seeded.string() + ".manifest")
                          .find("seed = 9") != std::string::npos,
                  "seed override not recorded in manifest");

  // Exit codes: 2 for usage errors, 1 for invalid configuration.
  verdict.require(run_tool("no-such-experiment --config " +
                           (dir / "defaults.cfg").string() +
                           " --output x.csv") == 2,
                  "unknown experiment did not exit 2");
  {
    std::ofstream bad(dir / "bad.cfg", std::ios::binary);
    bad << "hpbw_deg = 95\n";
  }
  verdict.require(run_tool("sweep-power --config " + (dir / "bad.cfg").string() +
                           " --output " + (dir / "bad.csv").string()) == 1,
                  "invalid config did not exit 1");

  verdict.finish(
      "byte-identical reruns, worker-count invariance, provenance, exit codes");
}

TEST_CASE("criterion 8: SNR scales decibel-for-decibel with transmit power") {
  Verdict verdict(8);

  const ScenarioConfig config;
  const auto rows = sweep_snr(config, power_grid(config));
  verdict.require(rows.size() == 64, "expected 64 rows");

  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& row = rows[i];
    verdict.require(std::isfinite(row.gamma_db),
                    std::string(variant_tag(row.variant)) +
                        " non-finite SNR at P_t " + fmt(row.indep_value));
    // gamma(dB) = P_r(dBm) - noise(dBm) exactly.
    verdict.require(
        close_abs(row.gamma_db, row.p_r_dbm - config.noise_dbm, 1e-9),
        "SNR/noise bookkeeping broken at row " + std::to_string(i));
    if (i % 16 != 0) {
      const double slope = (row.gamma_db - rows[i - 1].gamma_db) /
                           (row.indep_value - rows[i - 1].indep_value);
      verdict.require(close_abs(slope, 1.0, 1e-9),
                      std::string(variant_tag(row.variant)) +
                          " slope " + fmt(slope) + " at P_t " +
                          fmt(row.indep_value));
    }
  }

  // Received power is linear in transmit power over the whole sweep span.
  for (int v = 0; v < 4; ++v) {
    const SweepRow& low = rows[static_cast<std::size_t>(v * 16)];
    const SweepRow& high = rows[static_cast<std::size_t>(v * 16 + 15)];
    verdict.require(
        close_abs(high.p_r_dbm - low.p_r_dbm,
                  high.indep_value - low.indep_value, 1e-9),
        std::string(variant_tag(kAllVariants[v])) + " power span not linear");
  }

  verdict.finish("mean SNR tracks transmit power with unit decibel slope");
}
