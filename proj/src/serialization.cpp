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

#include "twostage/serialization.hpp"

#include "twostage/distributed.hpp"

namespace twostage {

void to_json(nlohmann::json& j, const TwoStageSolution& sol) {
  j = nlohmann::json{{"summary", sol.summary},
                     {"per_function", sol.per_function},
                     {"value", sol.value},
                     {"ell", sol.ell},
                     {"k", sol.k}};
}

void from_json(const nlohmann::json& j, TwoStageSolution& sol) {
  j.at("summary").get_to(sol.summary);
  j.at("per_function").get_to(sol.per_function);
  j.at("value").get_to(sol.value);
  j.at("ell").get_to(sol.ell);
  j.at("k").get_to(sol.k);
}

std::string to_json(const WorkerOutput& output) {
  nlohmann::json solutions = nlohmann::json::array();
  for (const auto& ws : output.solutions) {
    nlohmann::json entry = ws.solution;
    entry["level"] = ws.level ? nlohmann::json(*ws.level) : nlohmann::json(nullptr);
    entry["tau"] = ws.tau ? nlohmann::json(*ws.tau) : nlohmann::json(nullptr);
    solutions.push_back(std::move(entry));
  }
  nlohmann::json j{{"machine", output.machine},
                   {"peak_stored", output.peak_stored},
                   {"solutions", std::move(solutions)}};
  return j.dump();
}

WorkerOutput worker_output_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ArgumentError(std::string("malformed worker output: ") + e.what());
  }
  WorkerOutput out;
  j.at("machine").get_to(out.machine);
  j.at("peak_stored").get_to(out.peak_stored);
  for (const auto& entry : j.at("solutions")) {
    WorkerSolution ws;
    ws.solution = entry.get<TwoStageSolution>();
    if (!entry.at("level").is_null()) ws.level = entry.at("level").get<int>();
    if (!entry.at("tau").is_null()) ws.tau = entry.at("tau").get<double>();
    out.solutions.push_back(std::move(ws));
  }
  return out;
}

}  // namespace twostage
