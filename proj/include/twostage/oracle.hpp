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

#include <cstdint>
#include <span>
#include <vector>

#include "twostage/core.hpp"

namespace twostage {

inline constexpr std::uint64_t kDefaultOracleBudget = 100'000'000;

struct OracleResult {
  double value = 0.0;  // OPT
  ElementSet summary;  // S*, lexicographically smallest among optimal sets
  std::vector<ElementSet> per_function;
  std::uint64_t work = 0;

  TwoStageSolution as_solution(std::size_t ell, std::size_t k) const;
};

// Enumeration work C(n, ell) * C(ell, k) * m; saturates instead of
// overflowing.
std::uint64_t oracle_work(std::size_t n, std::size_t ell, std::size_t k, std::size_t m);

// Exhaustive two-stage optimum over every S with |S| <= ell and every
// T_i in S with |T_i| <= k. Throws BudgetExceeded above `budget` work units
// and ArgumentError for ground sets larger than 64 elements.
OracleResult brute_force_opt(const ObjectiveFamily& family, std::span<const ElementId> ground,
                             std::size_t ell, std::size_t k,
                             std::uint64_t budget = kDefaultOracleBudget);

}  // namespace twostage
