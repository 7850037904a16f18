// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "risnet/config.hpp"
#include "risnet/validate.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

void apply_thread_cap() {
#ifdef _OPENMP
  const char* env = std::getenv("RISNET_THREADS");
  if (!env) return;
  const int cap = std::atoi(env);
  if (cap > 0) {
    omp_set_num_threads(std::min(cap, omp_get_max_threads()));
  }
#endif
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"risnet: coverage and rate of RIS-assisted OFDM cellular "
               "networks, analytic + Monte Carlo"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run an experiment from a config file");
  std::string config_path;
  std::string output_override;
  std::uint64_t seed_override = 0;
  long samples_override = 0;
  run->add_option("--config", config_path, "JSON experiment config")
      ->required();
  run->add_option("--output", output_override, "Output CSV path override");
  auto* seed_opt = run->add_option("--seed", seed_override, "Seed override");
  auto* n_opt = run->add_option("--mc-samples", samples_override,
                                "Monte Carlo sample count override");

  auto* validate_cmd =
      app.add_subcommand("validate", "Run the acceptance suite");
  bool quick = false;
  validate_cmd->add_flag("--quick", quick,
                         "Reduced sample counts (smoke run)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  apply_thread_cap();

  try {
    if (*validate_cmd) {
      const auto results = risnet::validate::run_acceptance(quick, &std::cout);
      const bool ok = risnet::validate::all_passed(results);
      std::cout << (ok ? "all criteria passed" : "ACCEPTANCE FAILURE")
                << std::endl;
      return ok ? 0 : 1;
    }
    auto config = risnet::cfg::load_config(config_path);
    if (config.scenario == risnet::cfg::Scenario::validate) {
      const auto results = risnet::validate::run_acceptance(quick, &std::cout);
      return risnet::validate::all_passed(results) ? 0 : 1;
    }
    if (!output_override.empty()) config.output_path = output_override;
    if (seed_opt->count() > 0) config.seed = seed_override;
    if (n_opt->count() > 0) {
      if (samples_override < 100) {
        throw risnet::ConfigError("--mc-samples: must be >= 100");
      }
      config.mc_samples = samples_override;
    }
    const auto rows = risnet::cfg::run_experiment(config);
    risnet::cfg::write_csv(rows, config.output_path);
    std::cout << "wrote " << rows.size() << " rows to " << config.output_path
              << std::endl;
    return 0;
  } catch (const risnet::ConfigError& e) {
    std::cerr << "config error: " << e.what() << std::endl;
    return 2;
  } catch (const risnet::FeasibilityError& e) {
    std::cerr << "infeasible parameters: " << e.what() << std::endl;
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 1;
  }
}
