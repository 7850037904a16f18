// SPDX-License-Identifier: Apache-2.0
#include "risnet/config.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace risnet::cfg {

using json = nlohmann::json;

Scenario scenario_from_string(const std::string& name) {
  if (name == "coverage") return Scenario::coverage;
  if (name == "rate") return Scenario::rate;
  if (name == "fig5") return Scenario::fig5;
  if (name == "fig6") return Scenario::fig6;
  if (name == "fig7") return Scenario::fig7;
  if (name == "fig8") return Scenario::fig8;
  if (name == "validate") return Scenario::validate;
  throw ConfigError("scenario: unknown value '" + name + "'");
}

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::coverage: return "coverage";
    case Scenario::rate: return "rate";
    case Scenario::fig5: return "fig5";
    case Scenario::fig6: return "fig6";
    case Scenario::fig7: return "fig7";
    case Scenario::fig8: return "fig8";
    case Scenario::validate: return "validate";
  }
  return "?";
}

namespace {

// Power-like quantity: plain number (linear) or "<x>dB" string.
double parse_power(const json& v, const std::string& path) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    std::string s = v.get<std::string>();
    auto pos = s.find("dB");
    if (pos == std::string::npos) pos = s.find("db");
    if (pos == std::string::npos || pos + 2 != s.size()) {
      throw ConfigError(path + ": expected a number or '<x>dB', got '" + s +
                        "'");
    }
    std::string num = s.substr(0, pos);
    while (!num.empty() && num.back() == ' ') num.pop_back();
    std::size_t used = 0;
    double db = 0.0;
    try {
      db = std::stod(num, &used);
    } catch (const std::exception&) {
      throw ConfigError(path + ": cannot parse dB value '" + s + "'");
    }
    if (used != num.size()) {
      throw ConfigError(path + ": cannot parse dB value '" + s + "'");
    }
    return std::pow(10.0, db / 10.0);
  }
  throw ConfigError(path + ": expected a number or dB string");
}

double parse_number(const json& v, const std::string& path) {
  if (!v.is_number()) throw ConfigError(path + ": expected a number");
  return v.get<double>();
}

long parse_count(const json& v, const std::string& path) {
  if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return v.get<long>();
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (!allowed.count(key)) {
      throw ConfigError(prefix + key + ": unknown key");
    }
  }
}

bool is_power_field(const std::string& field) {
  return field == "p0" || field == "noise_power" || field == "threshold" ||
         field == "c_d" || field == "c_r";
}

void parse_params(const json& obj, analytic::SystemParams& p) {
  reject_unknown(obj,
                 {"lambda_bs", "lambda_ris", "mean_ris_per_cluster", "r_in",
                  "r_out", "p0", "noise_power", "m_total", "m_batch",
                  "alpha_los", "alpha_nlos", "alpha_ir", "f_c", "beta",
                  "beamwidth_deg", "k_factor", "serving_distance", "threshold"},
                 "params.");
  bool mean_given = false;
  double mean_ris = 0.0;
  for (const auto& [key, v] : obj.items()) {
    const std::string path = "params." + key;
    if (key == "lambda_bs") p.lambda_bs = parse_number(v, path);
    else if (key == "lambda_ris") p.lambda_ris = parse_number(v, path);
    else if (key == "mean_ris_per_cluster") {
      mean_given = true;
      mean_ris = parse_number(v, path);
    } else if (key == "r_in") p.r_in = parse_number(v, path);
    else if (key == "r_out") p.r_out = parse_number(v, path);
    else if (key == "p0") p.p0 = parse_power(v, path);
    else if (key == "noise_power") p.noise_power = parse_power(v, path);
    else if (key == "m_total") p.m_total = static_cast<int>(parse_count(v, path));
    else if (key == "m_batch") p.m_batch = static_cast<int>(parse_count(v, path));
    else if (key == "alpha_los") p.pathloss.alpha_los = parse_number(v, path);
    else if (key == "alpha_nlos") p.pathloss.alpha_nlos = parse_number(v, path);
    else if (key == "alpha_ir") p.pathloss.alpha_ir = parse_number(v, path);
    else if (key == "f_c") {
      p.pathloss.f_c = parse_number(v, path);
      p.pathloss.beta = geometry::PathlossParams::from_carrier(p.pathloss.f_c).beta;
    } else if (key == "beta") p.pathloss.beta = parse_number(v, path);
    else if (key == "beamwidth_deg") {
      p.beam = fading::BeamOverlap::from_beamwidth(parse_number(v, path));
    } else if (key == "k_factor") p.rician.k_factor = parse_number(v, path);
    else if (key == "serving_distance") p.serving_distance = parse_number(v, path);
    else if (key == "threshold") p.threshold = parse_power(v, path);
  }
  if (mean_given) {
    if (obj.count("lambda_ris")) {
      throw ConfigError(
          "params.mean_ris_per_cluster: mutually exclusive with "
          "params.lambda_ris");
    }
    p.lambda_ris =
        analytic::SystemParams::density_for_mean(mean_ris, p.r_in, p.r_out);
  }
  if (!(p.r_in < p.r_out)) {
    throw ConfigError("params.r_in/params.r_out: need r_in < r_out");
  }
  p.derive();
  p.validate();
  // Separation restriction of the cluster model; advisory only, since the
  // reference scenarios themselves sit near this regime.
  if (2.0 * p.r_out > 0.5 / std::sqrt(p.lambda_bs)) {
    std::fprintf(stderr,
                 "warning: cluster diameter 2*r_out=%.1f m is not small "
                 "against the half BS spacing %.1f m; non-associated "
                 "reflections may be non-negligible\n",
                 2.0 * p.r_out, 0.5 / std::sqrt(p.lambda_bs));
  }
}

void parse_variant(const json& obj, variants::HoleScenario& v) {
  reject_unknown(obj,
                 {"serving_distance", "hole_radius", "r_in", "r_out", "c_d",
                  "c_r", "model", "n_ris", "wedge_deg", "ppp_mean"},
                 "variant.");
  for (const auto& [key, val] : obj.items()) {
    const std::string path = "variant." + key;
    if (key == "serving_distance") v.hole.serving_distance = parse_number(val, path);
    else if (key == "hole_radius") v.hole.hole_radius = parse_number(val, path);
    else if (key == "r_in") v.hole.r_in = parse_number(val, path);
    else if (key == "r_out") v.hole.r_out = parse_number(val, path);
    else if (key == "c_d") v.hole.c_d = parse_power(val, path);
    else if (key == "c_r") v.hole.c_r = parse_power(val, path);
    else if (key == "model") {
      const std::string name = val.get<std::string>();
      if (name == "mcp-ring") v.model = variants::HoleModel::mcp_ring;
      else if (name == "bpp-wedge") v.model = variants::HoleModel::bpp_wedge;
      else if (name == "ppp-wedge") v.model = variants::HoleModel::ppp_wedge;
      else throw ConfigError(path + ": unknown model '" + name + "'");
    } else if (key == "n_ris") v.n_ris = static_cast<int>(parse_count(val, path));
    else if (key == "wedge_deg") {
      v.wedge_half_angle = parse_number(val, path) * M_PI / 360.0;
    } else if (key == "ppp_mean") v.wedge_ppp_mean = parse_number(val, path);
  }
  if (!(v.hole.r_in < v.hole.r_out)) {
    throw ConfigError("variant.r_in/variant.r_out: need r_in < r_out");
  }
  v.hole.validate();
}

void parse_sweep(const json& obj, ExperimentConfig& c) {
  reject_unknown(obj, {"field", "values"}, "sweep.");
  if (!obj.count("field") || !obj.count("values")) {
    throw ConfigError("sweep: needs both 'field' and 'values'");
  }
  SweepSpec sweep;
  sweep.field = obj.at("field").get<std::string>();
  if (!obj.at("values").is_array() || obj.at("values").empty()) {
    throw ConfigError("sweep.values: expected a non-empty array");
  }
  for (const auto& v : obj.at("values")) {
    sweep.values.push_back(is_power_field(sweep.field)
                               ? parse_power(v, "sweep.values")
                               : parse_number(v, "sweep.values"));
  }
  c.sweep = sweep;
}

// Applies one sweep value; throws for fields that are not sweepable numbers.
void apply_field(ExperimentConfig& c, const std::string& field, double value) {
  auto& p = c.params;
  if (field == "threshold") p.threshold = value;
  else if (field == "lambda_bs") p.lambda_bs = value;
  else if (field == "lambda_ris") p.lambda_ris = value;
  else if (field == "mean_ris_per_cluster") {
    p.lambda_ris = analytic::SystemParams::density_for_mean(value, p.r_in, p.r_out);
    if (c.scenario == Scenario::fig7) {
      // Fixed element budget: more clusters means smaller panels.
      p.m_total = std::max<int>(
          5, static_cast<int>(std::lround(c.total_elements_per_cluster / value)));
      p.m_batch = std::max(1, p.m_total / 5);
    }
  } else if (field == "serving_distance") p.serving_distance = value;
  else if (field == "p0") p.p0 = value;
  else if (field == "noise_power") p.noise_power = value;
  else if (field == "beamwidth_deg") {
    p.beam = fading::BeamOverlap::from_beamwidth(value);
  } else if (field == "alpha_ir") p.pathloss.alpha_ir = value;
  else if (field == "alpha_los") p.pathloss.alpha_los = value;
  else if (field == "alpha_nlos") p.pathloss.alpha_nlos = value;
  else if (field == "m_total") p.m_total = static_cast<int>(value);
  else if (field == "m_batch") p.m_batch = static_cast<int>(value);
  else if (field == "r_in") p.r_in = value;
  else if (field == "r_out") p.r_out = value;
  else if (field == "c_d") c.variant.hole.c_d = value;
  else if (field == "c_r") c.variant.hole.c_r = value;
  else if (field == "n_ris") c.variant.n_ris = static_cast<int>(value);
  else {
    throw ConfigError("sweep.field: '" + field +
                      "' does not name a sweepable numeric field");
  }
  p.derive();
}

SweepSpec default_sweep(Scenario scenario) {
  auto db = [](std::initializer_list<double> dbs) {
    std::vector<double> out;
    for (double d : dbs) out.push_back(std::pow(10.0, d / 10.0));
    return out;
  };
  switch (scenario) {
    case Scenario::coverage:
      return {"threshold", db({-10, -5, 0, 5, 10})};
    case Scenario::rate:
      return {"serving_distance", {60, 80, 100, 120, 140}};
    case Scenario::fig5:
      return {"beamwidth_deg", {3.6, 10, 36, 90, 180}};
    case Scenario::fig6:
      return {"lambda_bs", {1e-6, 2e-6, 4e-6, 7e-6, 10e-6}};
    case Scenario::fig7:
      return {"mean_ris_per_cluster", {1, 2, 4, 5, 10}};
    case Scenario::fig8:
      return {"c_d", db({0, -1, -2, -3, -4, -5})};
    case Scenario::validate:
      return {"", {}};
  }
  return {"", {}};
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config: expected a JSON object");
  reject_unknown(doc,
                 {"schema", "scenario", "params", "variant", "mc_samples",
                  "seed", "sweep", "output_path", "total_elements_per_cluster",
                  "parallel"},
                 "");
  if (!doc.count("schema") || !doc.at("schema").is_number_integer() ||
      doc.at("schema").get<int>() != 1) {
    throw ConfigError("schema: required and must be 1");
  }
  ExperimentConfig c;
  if (doc.count("scenario")) {
    c.scenario = scenario_from_string(doc.at("scenario").get<std::string>());
  }
  if (c.scenario == Scenario::fig8) {
    // Reference deployment for the coverage-hole studies.
    c.params.lambda_bs = 4e-6;
    c.params.lambda_ris =
        analytic::SystemParams::density_for_mean(4.0, 25.0, 35.0);
    c.params.serving_distance = 80.0;
    c.params.derive();
  }
  if (doc.count("params")) parse_params(doc.at("params"), c.params);
  if (doc.count("variant")) parse_variant(doc.at("variant"), c.variant);
  if (doc.count("mc_samples")) {
    c.mc_samples = parse_count(doc.at("mc_samples"), "mc_samples");
    if (c.mc_samples < 100) throw ConfigError("mc_samples: must be >= 100");
  }
  if (doc.count("seed")) {
    c.seed = doc.at("seed").get<std::uint64_t>();
  }
  if (doc.count("total_elements_per_cluster")) {
    c.total_elements_per_cluster =
        parse_number(doc.at("total_elements_per_cluster"),
                     "total_elements_per_cluster");
  }
  if (doc.count("parallel")) {
    if (!doc.at("parallel").is_boolean()) {
      throw ConfigError("parallel: expected a boolean");
    }
    c.parallel = doc.at("parallel").get<bool>();
  }
  if (doc.count("output_path")) {
    c.output_path = doc.at("output_path").get<std::string>();
  }
  if (doc.count("sweep")) {
    parse_sweep(doc.at("sweep"), c);
  } else if (c.scenario != Scenario::validate) {
    c.sweep = default_sweep(c.scenario);
  }
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config file not found: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

namespace {

double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

std::vector<ResultRow> run_experiment(const ExperimentConfig& config) {
  if (config.scenario == Scenario::validate) {
    throw ConfigError(
        "run_experiment: scenario 'validate' runs through the validate "
        "command");
  }
  if (!config.sweep || config.sweep->values.empty()) {
    throw ConfigError("sweep: no values to run");
  }
  numerics::QuadratureConfig quad;
  quad.parallel = config.parallel;

  std::vector<ResultRow> rows;
  const auto& sweep = *config.sweep;

  // Threshold sweeps share one SINR stream: all thresholds are evaluated
  // against common random numbers.
  const bool shared_batch =
      sweep.field == "threshold" && config.scenario == Scenario::coverage;
  std::optional<montecarlo::BatchResult> batch;
  if (shared_batch) {
    montecarlo::SimOptions so;
    so.n = config.mc_samples;
    so.seed = config.seed;
    so.parallel = config.parallel;
    batch = montecarlo::run_batch(config.params, so);
  }

  for (double value : sweep.values) {
    ExperimentConfig point = config;
    apply_field(point, sweep.field, value);
    const double t0 = now_seconds();
    ResultRow row;
    row.sweep_value = value;
    switch (config.scenario) {
      case Scenario::coverage: {
        row.analytic = analytic::coverage_probability(point.params.threshold,
                                                      point.params, quad);
        montecarlo::EstimateWithCI mc;
        if (shared_batch) {
          mc = montecarlo::coverage_from_samples(batch->samples,
                                                 point.params.threshold);
        } else {
          mc = montecarlo::estimate_coverage(point.params,
                                             point.params.threshold,
                                             point.mc_samples, point.seed);
        }
        row.mc_mean = mc.mean;
        row.mc_se = mc.std_error;
        break;
      }
      case Scenario::rate:
      case Scenario::fig6:
      case Scenario::fig7: {
        row.analytic = analytic::ergodic_rate(point.params, quad);
        const auto mc = montecarlo::estimate_ergodic_rate(
            point.params, point.mc_samples, point.seed);
        row.mc_mean = mc.mean;
        row.mc_se = mc.std_error;
        break;
      }
      case Scenario::fig5: {
        const auto powers = analytic::mean_power_decomposition(point.params);
        row.analytic = powers.reflected_interference /
                       (powers.direct_interference +
                        powers.reflected_interference);
        montecarlo::SimOptions so;
        so.n = point.mc_samples;
        so.seed = point.seed;
        so.parallel = point.parallel;
        const auto b = montecarlo::run_batch(point.params, so);
        const auto frac = b.reflected_interference_fraction();
        row.mc_mean = frac.mean;
        row.mc_se = frac.std_error;
        break;
      }
      case Scenario::fig8: {
        row.analytic =
            variants::relative_gain(point.variant, point.params, quad);
        const auto with_ris = variants::estimate_hole_rate(
            point.variant, point.params, point.mc_samples, point.seed);
        auto bare = point.variant;
        bare.model = variants::HoleModel::mcp_ring;
        auto bare_params = point.params;
        bare_params.lambda_ris = 0.0;
        bare_params.derive();
        const auto without_ris = variants::estimate_hole_rate(
            bare, bare_params, point.mc_samples, point.seed);
        row.mc_mean = with_ris.mean / without_ris.mean;
        const double rel_var =
            std::pow(with_ris.std_error / with_ris.mean, 2) +
            std::pow(without_ris.std_error / without_ris.mean, 2);
        row.mc_se = row.mc_mean * std::sqrt(rel_var);
        break;
      }
      case Scenario::validate:
        break;
    }
    row.sweep_value = value;
    row.runtime_s = now_seconds() - t0;
    rows.push_back(row);
  }
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows) {
  std::string out = "sweep_value,analytic,mc_mean,mc_se,runtime_s\n";
  char line[256];
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%.10g,%.10g,%.10g,%.10g,%.3f\n",
                  r.sweep_value, r.analytic, r.mc_mean, r.mc_se, r.runtime_s);
    out += line;
  }
  return out;
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << rows_to_csv(rows);
}

}  // namespace risnet::cfg
