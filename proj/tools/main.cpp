#include "maris/cli.hpp"

#include "CLI11.hpp"

#include <cstdint>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"Deterministic movable-element reflecting-surface link simulator"};
  app.name("ma-ris-sim");

  std::vector<std::string> experiments(std::begin(maris::kExperimentNames),
                                       std::end(maris::kExperimentNames));
  maris::RunOptions options;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;

  app.add_option("experiment", options.experiment,
                 "One of: sweep-power, sweep-elements, sweep-position, "
                 "sweep-snr, compare, outage-check")
      ->required()
      ->check(CLI::IsMember(experiments));
  app.add_option("--config", options.config_path,
                 "Path to a key = value configuration file")
      ->required();
  app.add_option("--output", options.output_path,
                 "CSV output path; a .manifest sidecar is written next to it")
      ->required();
  const auto* seed_opt =
      app.add_option("--seed", seed, "Override the configured random seed");
  const auto* trials_opt = app.add_option(
      "--trials", trials, "Override the configured Monte Carlo trial count");
  app.add_flag("--quiet", options.quiet, "Suppress the stdout summary");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  if (seed_opt->count() > 0) {
    options.seed = seed;
  }
  if (trials_opt->count() > 0) {
    options.trials = trials;
  }

  try {
    return maris::run_experiment(options, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
