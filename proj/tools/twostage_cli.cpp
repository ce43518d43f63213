// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// twostage: run two-stage summarization experiments from the command line.
//
//   twostage run experiment.cfg [--ell 5,10 --seed 3 ...]
//   twostage oracle experiment.cfg [--ell 3 --k 2 ...]
//   twostage gen-synthetic --kind points --n 5000 --out pickups.csv

#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "twostage/data.hpp"
#include "twostage/experiment.hpp"
#include "twostage/oracle.hpp"

namespace {

using twostage::ExperimentConfig;

// Registers --<key> for every config field on `cmd`.
void add_overrides(CLI::App* cmd, std::map<std::string, std::string>& values) {
  for (const auto& key : twostage::config_keys())
    cmd->add_option("--" + key, values[key], "override config field '" + key + "'");
}

ExperimentConfig resolve_config(const std::string& path, CLI::App* cmd,
                                const std::map<std::string, std::string>& values) {
  ExperimentConfig config = path.empty() ? ExperimentConfig{} : twostage::load_config(path);
  for (const auto& key : twostage::config_keys())
    if (cmd->get_option("--" + key)->count() > 0)
      twostage::set_config_field(config, key, values.at(key));
  config.validate();
  return config;
}

void write_outputs(const ExperimentConfig& config, const std::vector<twostage::ReportRow>& rows) {
  if (config.output.empty()) {
    std::cout << (config.format == "csv" ? twostage::report_csv(rows) : twostage::report_json(rows));
    return;
  }
  if (config.format == "csv" || config.format == "both")
    twostage::emit_report(rows, config.output + ".csv", twostage::ReportFormat::Csv);
  if (config.format == "json" || config.format == "both")
    twostage::emit_report(rows, config.output + ".json", twostage::ReportFormat::Json);
}

int run_oracle(const ExperimentConfig& config) {
  auto instance = twostage::build_instance(config);
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (auto ell : config.ell) {
    for (auto k : config.k) {
      auto result = twostage::brute_force_opt(instance.family, instance.ground, ell, k,
                                              config.oracle_budget);
      nlohmann::ordered_json j;
      j["ell"] = ell;
      j["k"] = k;
      j["opt"] = result.value;
      j["summary"] = result.summary;
      j["per_function"] = result.per_function;
      j["work"] = result.work;
      out.push_back(std::move(j));
    }
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stage submodular summarization: greedy, streaming, distributed"};
  app.require_subcommand(1);

  std::string run_path;
  std::map<std::string, std::string> run_values;
  auto* run = app.add_subcommand("run", "run an experiment sweep and write a report");
  run->add_option("config", run_path, "experiment config file (key = value lines)");
  add_overrides(run, run_values);

  std::string oracle_path;
  std::map<std::string, std::string> oracle_values;
  auto* oracle = app.add_subcommand("oracle", "exhaustive optimum of a small instance");
  oracle->add_option("config", oracle_path, "experiment config file (key = value lines)");
  add_overrides(oracle, oracle_values);

  std::string kind = "points";
  std::size_t n = 1000;
  std::size_t classes = 20;
  std::size_t clusters = 8;
  std::uint64_t seed = 1;
  std::string out_path;
  auto* gen = app.add_subcommand("gen-synthetic", "write a synthetic points or features CSV");
  gen->add_option("--kind", kind, "points | features")
      ->check(CLI::IsMember({"points", "features"}));
  gen->add_option("--n", n, "number of rows")->check(CLI::PositiveNumber);
  gen->add_option("--classes", classes, "class count (features)")->check(CLI::PositiveNumber);
  gen->add_option("--clusters", clusters, "cluster count (points)")->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "random seed");
  gen->add_option("--out", out_path, "output CSV path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      auto config = resolve_config(run_path, run, run_values);
      write_outputs(config, twostage::run_experiment(config));
    } else if (*oracle) {
      return run_oracle(resolve_config(oracle_path, oracle, oracle_values));
    } else if (*gen) {
      if (kind == "points")
        twostage::write_points_csv(out_path, twostage::generate_points(n, clusters, seed));
      else
        twostage::write_features_csv(out_path, twostage::generate_features(n, classes, seed));
    }
  } catch (const std::exception& e) {
    std::cerr << "twostage: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
