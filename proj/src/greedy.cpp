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

#include "twostage/greedy.hpp"

#include <string>

namespace twostage {

TwoStageSolution replacement_greedy(const ObjectiveFamily& family,
                                    std::span<const ElementId> candidates, std::size_t ell,
                                    std::size_t k, GreedyTrace* trace) {
  if (ell < 1) throw ArgumentError("ell must be at least 1");
  if (k < 1) throw ArgumentError("k must be at least 1");
  if (k > ell)
    throw ArgumentError("k=" + std::to_string(k) + " exceeds ell=" + std::to_string(ell));
  if (candidates.empty()) throw ArgumentError("replacement greedy needs candidates");
  for (ElementId x : candidates) family.check_element(x);

  const std::size_t m = family.size();
  const ElementSet pool = canonical(candidates);

  ElementSet summary;
  std::vector<ElementSet> sets(m);
  std::vector<double> values(m, 0.0);
  std::vector<char> taken(pool.size(), 0);

  std::vector<SwapOutcome> scratch(m);
  std::vector<SwapOutcome> best_moves(m);

  for (std::size_t round = 0; round < ell; ++round) {
    std::size_t best_index = pool.size();
    double best_total = 0.0;
    for (std::size_t c = 0; c < pool.size(); ++c) {
      if (taken[c]) continue;
      double total = 0.0;
      for (std::size_t i = 0; i < m; ++i) {
        scratch[i] = lambda_gain(family, i, pool[c], sets[i], k, values[i]);
        total += scratch[i].gain;
      }
      // Strict comparison keeps the lowest id among equal totals.
      if (best_index == pool.size() || total > best_total) {
        best_index = c;
        best_total = total;
        best_moves.swap(scratch);
      }
    }
    if (best_index == pool.size() || !(best_total > 0.0)) break;

    const ElementId chosen = pool[best_index];
    taken[best_index] = 1;
    summary = with_inserted(summary, chosen);
    bool swapped = false;
    for (std::size_t i = 0; i < m; ++i) {
      const SwapOutcome& move = best_moves[i];
      if (!(move.gain > 0.0)) continue;
      if (move.replaced) {
        sets[i] = with_swapped(sets[i], chosen, *move.replaced);
        swapped = true;
      } else {
        sets[i] = with_inserted(sets[i], chosen);
      }
      values[i] = move.value_after;
    }
    if (trace) {
      double avg = 0.0;
      for (double v : values) avg += v;
      trace->rounds.push_back({chosen, best_total, swapped, avg / static_cast<double>(m)});
    }
  }

  TwoStageSolution sol;
  sol.summary = std::move(summary);
  sol.per_function = std::move(sets);
  sol.ell = ell;
  sol.k = k;
  double total = 0.0;
  for (double v : values) total += v;
  sol.value = total / static_cast<double>(m);
  return sol;
}

}  // namespace twostage
