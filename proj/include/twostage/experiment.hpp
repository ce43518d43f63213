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

#pragma once

// Experiment configuration and sweep orchestration. Reports are emitted as CSV or JSON.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twostage/core.hpp"
#include "twostage/oracle.hpp"

namespace twostage {

struct ExperimentConfig {
  // modular | coverage | facility | mixed build a synthetic family of size n;
  // points reads a lat,lon CSV and builds m facility regions;
  // features reads a class-count CSV and builds one exemplar function per class.
  std::string objective = "facility";
  std::string dataset;
  std::size_t n = 100;
  std::size_t m = 10;
  std::size_t classes = 20;

  std::vector<std::size_t> ell{10};
  std::vector<std::size_t> k{3};
  std::vector<double> epsilon{0.5};
  std::vector<std::size_t> machines{0};  // 0 = recommended count

  double alpha = 1.0;
  std::optional<double> beta;
  std::uint64_t seed = 1;

  double radius = 0.009;
  std::size_t cap = 10;

  std::vector<std::string> algorithms{"greedy", "streaming", "distributed", "fast"};
  std::uint64_t oracle_budget = kDefaultOracleBudget;

  std::string output;         // path stem; empty writes JSON to stdout
  std::string format = "json";  // csv | json | both
  bool timing = true;         // false records 0 seconds for reproducible reports
  std::size_t threads = 0;

  void validate() const;
};

// Keys accepted by the config file and as --key command-line overrides.
const std::vector<std::string>& config_keys();

// Sets one field from its text form. Throws ConfigError on unknown keys or
// malformed values.
void set_config_field(ExperimentConfig& config, std::string_view key, std::string_view value);

// Flat "key = value" text; '#' starts a comment.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::string& path);

struct Instance {
  ObjectiveFamily family;
  ElementSet ground;
};

Instance build_instance(const ExperimentConfig& config);

struct ReportRow {
  std::string algorithm;
  std::size_t ell = 0;
  std::size_t k = 0;
  std::optional<double> epsilon;
  std::optional<std::size_t> machines;
  std::uint64_t seed = 0;
  std::optional<double> value;  // empty for skipped rows
  double seconds = 0.0;
  std::uint64_t evals = 0;
  std::optional<std::size_t> peak_stored;
  ElementSet summary;
  std::vector<ElementSet> per_function;
  bool skipped = false;
  std::string note;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// Runs every requested algorithm at every sweep point. Rows are sorted by
// (algorithm, ell, k, epsilon, machines).
std::vector<ReportRow> run_experiment(const ExperimentConfig& config);
std::vector<ReportRow> run_experiment(const ExperimentConfig& config, const Instance& instance);

std::string report_csv(const std::vector<ReportRow>& rows);
std::string report_json(const std::vector<ReportRow>& rows);
std::vector<ReportRow> parse_report_json(std::string_view text);

enum class ReportFormat { Csv, Json };

void emit_report(const std::vector<ReportRow>& rows, const std::string& path, ReportFormat format);

}  // namespace twostage
