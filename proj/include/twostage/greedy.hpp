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

#include <span>
#include <vector>

#include "twostage/core.hpp"

namespace twostage {

// Per-round record of a replacement-greedy run.
struct GreedyRound {
  ElementId selected = 0;
  double total_gain = 0.0;  // sum_i Lambda_i(x*, T_i)
  bool swapped = false;     // at least one T_i replaced an element this round
  double value = 0.0;       // 1/m sum_i f_i(T_i) after the round
};

struct GreedyTrace {
  std::vector<GreedyRound> rounds;
};

// Centralized replacement greedy over `candidates`: ell rounds, each adding the
// candidate with the largest summed additive gain (lowest id on ties) and
// applying the per-function insertion or positive swap. Stops early once the
// best summed gain is 0. The result only depends on the candidate set.
TwoStageSolution replacement_greedy(const ObjectiveFamily& family,
                                    std::span<const ElementId> candidates, std::size_t ell,
                                    std::size_t k, GreedyTrace* trace = nullptr);

}  // namespace twostage
