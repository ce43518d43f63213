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

// Simulated multi-machine algorithms. Workers run as concurrent tasks over
// disjoint partitions; results are identical to a sequential execution.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twostage/core.hpp"
#include "twostage/streaming.hpp"

namespace twostage {

struct PartitionPlan {
  std::size_t machines = 1;
  std::uint64_t seed = 0;
  // parts[l] holds the ids assigned to machine l, ascending.
  std::vector<ElementSet> parts;

  std::size_t machine_of(ElementId id) const;
};

// Independent uniform assignment of each id to one of `machines` machines.
// The machine of an id depends only on (id, machines, seed).
PartitionPlan partition(std::span<const ElementId> ground, std::size_t machines,
                        std::uint64_t seed);

// One solution produced by a worker. Streaming workers report the threshold
// level and tau of each instance; greedy workers leave them empty.
struct WorkerSolution {
  std::optional<int> level;
  std::optional<double> tau;
  TwoStageSolution solution;
  friend bool operator==(const WorkerSolution&, const WorkerSolution&) = default;
};

struct WorkerOutput {
  std::size_t machine = 0;
  std::vector<WorkerSolution> solutions;
  std::size_t peak_stored = 0;
  friend bool operator==(const WorkerOutput&, const WorkerOutput&) = default;
};

// Canonical JSON form of a worker result (the boundary an out-of-process
// worker would serialize across).
std::string to_json(const WorkerOutput& output);
WorkerOutput worker_output_from_json(const std::string& text);

// Streaming over `part` sorted by ascending id, keeping every final instance.
WorkerOutput pseudo_streaming(std::span<const ElementId> part, const ObjectiveFamily& family,
                              const StreamParams& params);

struct DistributedResult {
  TwoStageSolution solution;
  std::vector<WorkerOutput> workers;
  TwoStageSolution best_worker;  // best single worker solution
  TwoStageSolution merged;       // greedy over the union of worker summaries
  std::size_t merge_candidates = 0;
  bool merged_won = false;
};

struct DistributedOptions {
  // Upper bound on concurrently running workers; 0 uses the hardware count.
  std::size_t threads = 0;
};

DistributedResult replacement_distributed(const ObjectiveFamily& family,
                                          std::span<const ElementId> ground,
                                          std::size_t machines, std::size_t ell, std::size_t k,
                                          std::uint64_t seed,
                                          const DistributedOptions& options = {});

DistributedResult distributed_fast(const ObjectiveFamily& family,
                                   std::span<const ElementId> ground, std::size_t machines,
                                   double epsilon, std::size_t ell, std::size_t k,
                                   std::uint64_t seed, double alpha = 1.0,
                                   const DistributedOptions& options = {});

enum class DistributedVariant { Greedy, Fast };

// round(sqrt(n / ell)) machines for the greedy variant and
// round(sqrt(n) / ell) for the fast variant, never below one.
std::size_t recommend_machine_count(std::size_t n, std::size_t ell, DistributedVariant variant);

}  // namespace twostage
