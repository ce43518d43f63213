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

#include "twostage/distributed.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "twostage/greedy.hpp"
#include "twostage/rng.hpp"

namespace twostage {

namespace {

std::size_t machine_for(ElementId id, std::size_t machines, std::uint64_t stream) {
  return static_cast<std::size_t>(bounded(derive_seed(stream, id), machines));
}

// Runs task(0..count-1) on up to `threads` workers. Each task writes only its
// own slot, so scheduling cannot change the results.
void run_workers(std::size_t count, std::size_t threads,
                 const std::function<void(std::size_t)>& task) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto loop = [&] {
    for (std::size_t t = next.fetch_add(1); t < count; t = next.fetch_add(1)) {
      try {
        task(t);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    loop();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(loop);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

void check_budgets(std::size_t machines, std::size_t ell, std::size_t k) {
  if (machines < 1) throw ArgumentError("machine count must be at least 1");
  if (ell < 1) throw ArgumentError("ell must be at least 1");
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (k > ell) throw ArgumentError("k must not exceed ell");
}

// Argmax over two candidates; the first wins ties.
void finish(DistributedResult& result, const ObjectiveFamily& family, ElementSet pool,
            std::size_t ell, std::size_t k) {
  result.merge_candidates = pool.size();
  result.merged = pool.empty() ? empty_solution(family, ell, k)
                               : replacement_greedy(family, pool, ell, k);
  result.merged_won = result.merged.value > result.best_worker.value;
  result.solution = result.merged_won ? result.merged : result.best_worker;
}

}  // namespace

std::size_t PartitionPlan::machine_of(ElementId id) const {
  for (std::size_t l = 0; l < parts.size(); ++l)
    if (std::binary_search(parts[l].begin(), parts[l].end(), id)) return l;
  throw ArgumentError("element " + std::to_string(id) + " is not in the partition");
}

PartitionPlan partition(std::span<const ElementId> ground, std::size_t machines,
                        std::uint64_t seed) {
  if (machines < 1) throw ArgumentError("machine count must be at least 1");
  PartitionPlan plan;
  plan.machines = machines;
  plan.seed = seed;
  plan.parts.resize(machines);
  const std::uint64_t stream = derive_seed(seed, streams::kPartition);
  for (ElementId id : canonical(ground)) plan.parts[machine_for(id, machines, stream)].push_back(id);
  return plan;
}

WorkerOutput pseudo_streaming(std::span<const ElementId> part, const ObjectiveFamily& family,
                              const StreamParams& params) {
  ThresholdManager manager(family, params);
  for (ElementId u : canonical(part)) manager.process(u);
  WorkerOutput out;
  for (const auto& [level, instance] : manager.instances())
    out.solutions.push_back({level, instance.tau, instance.state.solution()});
  out.peak_stored = manager.peak_stored();
  return out;
}

DistributedResult replacement_distributed(const ObjectiveFamily& family,
                                          std::span<const ElementId> ground,
                                          std::size_t machines, std::size_t ell, std::size_t k,
                                          std::uint64_t seed,
                                          const DistributedOptions& options) {
  check_budgets(machines, ell, k);
  if (ground.empty()) throw ArgumentError("ground set must not be empty");
  const PartitionPlan plan = partition(ground, machines, seed);

  DistributedResult result;
  result.workers.resize(machines);
  run_workers(machines, options.threads, [&](std::size_t l) {
    WorkerOutput& out = result.workers[l];
    out.machine = l;
    if (plan.parts[l].empty()) return;
    out.solutions.push_back({std::nullopt, std::nullopt,
                             replacement_greedy(family, plan.parts[l], ell, k)});
    out.peak_stored = out.solutions.back().solution.summary.size();
  });

  result.best_worker = empty_solution(family, ell, k);
  bool have_best = false;
  ElementSet pool;
  for (const auto& w : result.workers) {
    for (const auto& ws : w.solutions) {
      if (!have_best || ws.solution.value > result.best_worker.value) {
        result.best_worker = ws.solution;
        have_best = true;
      }
      pool.insert(pool.end(), ws.solution.summary.begin(), ws.solution.summary.end());
    }
  }
  finish(result, family, canonical(pool), ell, k);
  return result;
}

DistributedResult distributed_fast(const ObjectiveFamily& family,
                                   std::span<const ElementId> ground, std::size_t machines,
                                   double epsilon, std::size_t ell, std::size_t k,
                                   std::uint64_t seed, double alpha,
                                   const DistributedOptions& options) {
  check_budgets(machines, ell, k);
  if (ground.empty()) throw ArgumentError("ground set must not be empty");
  StreamParams params;
  params.epsilon = epsilon;
  params.alpha = alpha;
  params.ell = ell;
  params.k = k;
  // Validates epsilon and alpha before any worker starts.
  ThresholdManager probe(family, params);

  const PartitionPlan plan = partition(ground, machines, seed);
  DistributedResult result;
  result.workers.resize(machines);
  run_workers(machines, options.threads, [&](std::size_t l) {
    result.workers[l] = pseudo_streaming(plan.parts[l], family, params);
    result.workers[l].machine = l;
  });

  result.best_worker = empty_solution(family, ell, k);
  bool have_best = false;
  ElementSet pool;
  for (const auto& w : result.workers) {
    for (const auto& ws : w.solutions) {
      if (!have_best || ws.solution.value > result.best_worker.value) {
        result.best_worker = ws.solution;
        have_best = true;
      }
      pool.insert(pool.end(), ws.solution.summary.begin(), ws.solution.summary.end());
    }
  }
  finish(result, family, canonical(pool), ell, k);
  return result;
}

std::size_t recommend_machine_count(std::size_t n, std::size_t ell, DistributedVariant variant) {
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (ell < 1) throw ArgumentError("ell must be at least 1");
  const double nd = static_cast<double>(n);
  const double ld = static_cast<double>(ell);
  const double raw = variant == DistributedVariant::Greedy ? std::sqrt(nd / ld) : std::sqrt(nd) / ld;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(raw)));
}

}  // namespace twostage
