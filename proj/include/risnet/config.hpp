// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risnet/analytic.hpp"
#include "risnet/variants.hpp"

namespace risnet::cfg {

enum class Scenario { coverage, rate, fig5, fig6, fig7, fig8, validate };

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario s);

struct SweepSpec {
  std::string field;
  std::vector<double> values;  // stored linear after any dB conversion
};

struct ExperimentConfig {
  Scenario scenario = Scenario::coverage;
  analytic::SystemParams params = analytic::SystemParams::baseline();
  variants::HoleScenario variant{};
  long mc_samples = 100000;
  std::uint64_t seed = 1;
  std::optional<SweepSpec> sweep;
  std::string output_path = "results.csv";
  double total_elements_per_cluster = 10000.0;  // fig7 coupling M * mean
  bool parallel = true;
};

// JSON config document with `schema: 1`. Unknown keys are rejected with the
// field path; quantities that the literature quotes in dB (p0, noise_power,
// threshold, c_d, c_r) also accept strings like "-3dB", stored linear.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

struct ResultRow {
  double sweep_value = 0.0;
  double analytic = 0.0;
  double mc_mean = 0.0;
  double mc_se = 0.0;
  double runtime_s = 0.0;
};

std::vector<ResultRow> run_experiment(const ExperimentConfig& config);

// Exact CSV contract: header + one row per sweep value, %.10g values.
std::string rows_to_csv(const std::vector<ResultRow>& rows);
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

}  // namespace risnet::cfg
