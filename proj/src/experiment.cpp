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

#include "twostage/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <fstream>
#include <functional>
#include <sstream>
#include <tuple>

#include "json.hpp"
#include "twostage/data.hpp"
#include "twostage/distributed.hpp"
#include "twostage/greedy.hpp"
#include "twostage/objectives.hpp"
#include "twostage/streaming.hpp"

namespace twostage {

namespace {

const std::vector<std::string> kAlgorithms{"greedy", "streaming", "distributed", "fast",
                                           "oracle"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = s.find(',', start);
    auto item = trim(s.substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view why) {
  throw ConfigError("config key '" + std::string(key) + "': invalid value '" + std::string(value) +
                    "' (" + std::string(why) + ")");
}

template <class T>
T parse_scalar(std::string_view key, std::string_view text) {
  T out{};
  auto t = trim(text);
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size())
    bad_value(key, text, "not a number");
  return out;
}

template <class T>
std::vector<T> parse_list(std::string_view key, std::string_view text) {
  std::vector<T> out;
  for (auto item : split_list(text)) out.push_back(parse_scalar<T>(key, item));
  return out;
}

std::vector<std::size_t> parse_machines(std::string_view key, std::string_view text) {
  std::vector<std::size_t> out;
  for (auto item : split_list(text))
    out.push_back(item == "auto" ? 0 : parse_scalar<std::size_t>(key, item));
  return out;
}

bool parse_bool(std::string_view key, std::string_view text) {
  auto t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  bad_value(key, text, "expected true or false");
}

using Setter = std::function<void(ExperimentConfig&, std::string_view, std::string_view)>;

const std::vector<std::pair<std::string, Setter>>& setters() {
  static const std::vector<std::pair<std::string, Setter>> table{
      {"objective", [](auto& c, auto, auto v) { c.objective = std::string(trim(v)); }},
      {"dataset", [](auto& c, auto, auto v) { c.dataset = std::string(trim(v)); }},
      {"n", [](auto& c, auto k, auto v) { c.n = parse_scalar<std::size_t>(k, v); }},
      {"m", [](auto& c, auto k, auto v) { c.m = parse_scalar<std::size_t>(k, v); }},
      {"classes", [](auto& c, auto k, auto v) { c.classes = parse_scalar<std::size_t>(k, v); }},
      {"ell", [](auto& c, auto k, auto v) { c.ell = parse_list<std::size_t>(k, v); }},
      {"k", [](auto& c, auto k, auto v) { c.k = parse_list<std::size_t>(k, v); }},
      {"epsilon", [](auto& c, auto k, auto v) { c.epsilon = parse_list<double>(k, v); }},
      {"machines", [](auto& c, auto k, auto v) { c.machines = parse_machines(k, v); }},
      {"alpha", [](auto& c, auto k, auto v) { c.alpha = parse_scalar<double>(k, v); }},
      {"beta",
       [](auto& c, auto k, auto v) {
         if (trim(v) == "auto")
           c.beta.reset();
         else
           c.beta = parse_scalar<double>(k, v);
       }},
      {"seed", [](auto& c, auto k, auto v) { c.seed = parse_scalar<std::uint64_t>(k, v); }},
      {"radius", [](auto& c, auto k, auto v) { c.radius = parse_scalar<double>(k, v); }},
      {"cap", [](auto& c, auto k, auto v) { c.cap = parse_scalar<std::size_t>(k, v); }},
      {"algorithms",
       [](auto& c, auto, auto v) {
         c.algorithms.clear();
         for (auto item : split_list(v)) c.algorithms.emplace_back(item);
       }},
      {"oracle_budget",
       [](auto& c, auto k, auto v) { c.oracle_budget = parse_scalar<std::uint64_t>(k, v); }},
      {"output", [](auto& c, auto, auto v) { c.output = std::string(trim(v)); }},
      {"format", [](auto& c, auto, auto v) { c.format = std::string(trim(v)); }},
      {"timing", [](auto& c, auto k, auto v) { c.timing = parse_bool(k, v); }},
      {"threads", [](auto& c, auto k, auto v) { c.threads = parse_scalar<std::size_t>(k, v); }},
  };
  return table;
}

bool is_synthetic(std::string_view objective) {
  return objective == "modular" || objective == "coverage" || objective == "facility" ||
         objective == "mixed";
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [key, setter] : setters()) out.push_back(key);
    return out;
  }();
  return keys;
}

void set_config_field(ExperimentConfig& config, std::string_view key, std::string_view value) {
  auto k = trim(key);
  for (const auto& [name, setter] : setters()) {
    if (name == k) {
      setter(config, name, value);
      return;
    }
  }
  throw ConfigError("unknown config key '" + std::string(k) + "'");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    auto line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      auto eq = line.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
      try {
        set_config_field(config, line.substr(0, eq), line.substr(eq + 1));
      } catch (const ConfigError& e) {
        throw ConfigError("config line " + std::to_string(line_no) + ": " + e.what());
      }
    }
    start = end + 1;
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void ExperimentConfig::validate() const {
  if (ell.empty()) throw ConfigError("sweep axis 'ell' is empty");
  if (k.empty()) throw ConfigError("sweep axis 'k' is empty");
  if (epsilon.empty()) throw ConfigError("sweep axis 'epsilon' is empty");
  if (machines.empty()) throw ConfigError("sweep axis 'machines' is empty");
  if (algorithms.empty()) throw ConfigError("no algorithms requested");
  for (auto v : ell)
    if (v < 1) throw ConfigError("every ell must be at least 1");
  for (auto v : k)
    if (v < 1) throw ConfigError("every k must be at least 1");
  for (auto l : ell)
    for (auto kk : k)
      if (kk > l)
        throw ConfigError("k=" + std::to_string(kk) + " exceeds ell=" + std::to_string(l));
  for (auto e : epsilon)
    if (!(e > 0.0)) throw ConfigError("every epsilon must be positive");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (beta && !(*beta > 0.0)) throw ConfigError("beta must be positive");
  if (m < 1) throw ConfigError("m must be at least 1");
  for (const auto& a : algorithms)
    if (std::find(kAlgorithms.begin(), kAlgorithms.end(), a) == kAlgorithms.end())
      throw ConfigError("unknown algorithm '" + a + "'");
  if (format != "csv" && format != "json" && format != "both")
    throw ConfigError("format must be csv, json or both");
  if (is_synthetic(objective)) {
    if (n < 1) throw ConfigError("n must be at least 1");
  } else if (objective == "points" || objective == "features") {
    if (dataset.empty()) throw ConfigError("objective '" + objective + "' needs a dataset path");
    if (objective == "points" && !(radius > 0.0)) throw ConfigError("radius must be positive");
    if (objective == "points" && cap < 1) throw ConfigError("cap must be at least 1");
    if (objective == "features" && classes < 1) throw ConfigError("classes must be at least 1");
  } else {
    throw ConfigError("unknown objective '" + objective + "'");
  }
}

Instance build_instance(const ExperimentConfig& config) {
  config.validate();
  if (is_synthetic(config.objective)) {
    auto family = make_synthetic(config.objective, config.n, config.m, config.seed);
    return Instance{std::move(family), all_ids(config.n)};
  }
  if (config.objective == "points") {
    auto points = load_points_csv(config.dataset);
    RegionOptions options;
    options.radius = config.radius;
    options.cap = config.cap;
    auto regions = build_regions(points, config.m, options, config.seed);
    auto family = make_facility_family(points.items(), regions);
    return Instance{std::move(family), points.ids()};
  }
  auto data = load_features_csv(config.dataset, config.classes);
  auto family = make_exemplar_family(data.features, data.class_members);
  return Instance{std::move(family), all_ids(data.size())};
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config) {
  Instance instance = build_instance(config);
  return run_experiment(config, instance);
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config, const Instance& instance) {
  config.validate();
  const ObjectiveFamily& family = instance.family;
  const ElementSet& ground = instance.ground;
  auto wants = [&](std::string_view name) {
    return std::find(config.algorithms.begin(), config.algorithms.end(), name) !=
           config.algorithms.end();
  };
  DistributedOptions dist_options;
  dist_options.threads = config.threads;

  std::vector<ReportRow> rows;
  auto timed = [&](ReportRow row, auto&& body) {
    family.reset_evaluations();
    auto start = std::chrono::steady_clock::now();
    body(row);
    auto stop = std::chrono::steady_clock::now();
    row.seconds = config.timing ? std::chrono::duration<double>(stop - start).count() : 0.0;
    row.evals = family.evaluations();
    rows.push_back(std::move(row));
  };
  auto fill = [](ReportRow& row, const TwoStageSolution& sol) {
    row.value = sol.value;
    row.summary = sol.summary;
    row.per_function = sol.per_function;
  };
  auto resolve_machines = [&](std::size_t requested, std::size_t ell, DistributedVariant v) {
    return requested == 0 ? recommend_machine_count(ground.size(), ell, v) : requested;
  };

  for (std::size_t ell : config.ell) {
    for (std::size_t k : config.k) {
      ReportRow base;
      base.ell = ell;
      base.k = k;
      base.seed = config.seed;

      if (wants("greedy")) {
        base.algorithm = "greedy";
        timed(base, [&](ReportRow& row) { fill(row, replacement_greedy(family, ground, ell, k)); });
      }
      if (wants("oracle")) {
        base.algorithm = "oracle";
        const std::uint64_t work = oracle_work(ground.size(), ell, k, family.size());
        if (work > config.oracle_budget || ground.size() > 64) {
          ReportRow row = base;
          row.skipped = true;
          row.note = "oracle skipped: work " + std::to_string(work) + " over budget " +
                     std::to_string(config.oracle_budget) + " or n > 64";
          rows.push_back(std::move(row));
        } else {
          timed(base, [&](ReportRow& row) {
            fill(row, brute_force_opt(family, ground, ell, k, config.oracle_budget)
                          .as_solution(ell, k));
          });
        }
      }
      for (double eps : config.epsilon) {
        if (!wants("streaming")) break;
        base.algorithm = "streaming";
        base.epsilon = eps;
        StreamParams params;
        params.epsilon = eps;
        params.alpha = config.alpha;
        params.beta = config.beta;
        params.ell = ell;
        params.k = k;
        timed(base, [&](ReportRow& row) {
          auto result = run_streaming(ground, family, params);
          fill(row, result.solution);
          row.peak_stored = result.peak_stored;
        });
      }
      base.epsilon.reset();
      for (std::size_t requested : config.machines) {
        if (!wants("distributed")) break;
        base.algorithm = "distributed";
        base.machines = resolve_machines(requested, ell, DistributedVariant::Greedy);
        timed(base, [&](ReportRow& row) {
          fill(row, replacement_distributed(family, ground, *row.machines, ell, k, config.seed,
                                            dist_options)
                        .solution);
        });
      }
      base.machines.reset();
      if (wants("fast")) {
        for (double eps : config.epsilon) {
          for (std::size_t requested : config.machines) {
            base.algorithm = "fast";
            base.epsilon = eps;
            base.machines = resolve_machines(requested, ell, DistributedVariant::Fast);
            timed(base, [&](ReportRow& row) {
              auto result = distributed_fast(family, ground, *row.machines, eps, ell, k,
                                             config.seed, config.alpha, dist_options);
              fill(row, result.solution);
              std::size_t peak = 0;
              for (const auto& w : result.workers) peak = std::max(peak, w.peak_stored);
              row.peak_stored = peak;
            });
          }
        }
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const ReportRow& a, const ReportRow& b) {
    return std::tie(a.algorithm, a.ell, a.k, a.epsilon, a.machines) <
           std::tie(b.algorithm, b.ell, b.k, b.epsilon, b.machines);
  });
  return rows;
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto end = std::to_chars(buf, buf + sizeof buf, v).ptr;
  return std::string(buf, end);
}

template <class T>
nlohmann::json nullable(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <class T>
std::optional<T> optional_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<T>();
}

}  // namespace

std::string report_csv(const std::vector<ReportRow>& rows) {
  std::string out = "algorithm,ell,k,epsilon,M,seed,value,seconds,evals,peak_stored\n";
  for (const auto& r : rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.ell);
    out += ',' + std::to_string(r.k);
    out += ',' + (r.epsilon ? format_double(*r.epsilon) : "");
    out += ',' + (r.machines ? std::to_string(*r.machines) : "");
    out += ',' + std::to_string(r.seed);
    out += ',' + (r.value ? format_double(*r.value) : "");
    out += ',' + format_double(r.seconds);
    out += ',' + std::to_string(r.evals);
    out += ',' + (r.peak_stored ? std::to_string(*r.peak_stored) : "");
    out += '\n';
  }
  return out;
}

std::string report_json(const std::vector<ReportRow>& rows) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["algorithm"] = r.algorithm;
    j["ell"] = r.ell;
    j["k"] = r.k;
    j["epsilon"] = nullable(r.epsilon);
    j["M"] = nullable(r.machines);
    j["seed"] = r.seed;
    j["value"] = nullable(r.value);
    j["seconds"] = r.seconds;
    j["evals"] = r.evals;
    j["peak_stored"] = nullable(r.peak_stored);
    j["summary"] = r.summary;
    j["per_function"] = r.per_function;
    j["skipped"] = r.skipped;
    j["note"] = r.note;
    out.push_back(std::move(j));
  }
  return out.dump(2) + "\n";
}

std::vector<ReportRow> parse_report_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed report: ") + e.what());
  }
  std::vector<ReportRow> rows;
  for (const auto& j : doc) {
    ReportRow r;
    j.at("algorithm").get_to(r.algorithm);
    j.at("ell").get_to(r.ell);
    j.at("k").get_to(r.k);
    r.epsilon = optional_field<double>(j, "epsilon");
    r.machines = optional_field<std::size_t>(j, "M");
    j.at("seed").get_to(r.seed);
    r.value = optional_field<double>(j, "value");
    j.at("seconds").get_to(r.seconds);
    j.at("evals").get_to(r.evals);
    r.peak_stored = optional_field<std::size_t>(j, "peak_stored");
    j.at("summary").get_to(r.summary);
    j.at("per_function").get_to(r.per_function);
    j.at("skipped").get_to(r.skipped);
    j.at("note").get_to(r.note);
    rows.push_back(std::move(r));
  }
  return rows;
}

void emit_report(const std::vector<ReportRow>& rows, const std::string& path, ReportFormat format) {
  if (rows.empty()) throw ArgumentError("report has no rows");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write report to '" + path + "'");
  out << (format == ReportFormat::Csv ? report_csv(rows) : report_json(rows));
  if (!out) throw IoError("writing report to '" + path + "' failed");
}

}  // namespace twostage
