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

#include <algorithm>

#include "doctest.h"
#include "test_support.hpp"
#include "twostage/distributed.hpp"
#include "twostage/greedy.hpp"
#include "twostage/oracle.hpp"
#include "twostage/streaming.hpp"

using namespace twostage;
using namespace twostage::testing;

namespace {

// Single-stage maximum of f_0 over sets of size exactly `size`.
double best_single_stage(const ObjectiveFamily& f, std::size_t n, std::size_t size) {
  double best = 0.0;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != size) continue;
    ElementSet s;
    for (std::size_t x = 0; x < n; ++x)
      if (mask >> x & 1) s.push_back(static_cast<ElementId>(x));
    best = std::max(best, f.value(0, s));
  }
  return best;
}

double singleton_delta(const ObjectiveFamily& f, std::size_t n) {
  double delta = 0.0;
  for (ElementId u = 0; u < n; ++u) {
    double s = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) s += f.value(i, ElementSet{u});
    delta = std::max(delta, s / double(f.size()));
  }
  return delta;
}

}  // namespace

TEST_CASE("worked instance optimum") {
  auto f = worked_instance();
  auto r = brute_force_opt(f, all_ids(3), 2, 1);
  CHECK(r.value == 3.0);
  CHECK(r.summary == ElementSet{a, c});
  CHECK(r.per_function == std::vector<ElementSet>{{a}, {c}});
  auto sol = r.as_solution(2, 1);
  sol.validate();
  CHECK(evaluate_solution(f, sol) == 3.0);
}

TEST_CASE("unconstrained budgets take the full ground set") {
  for (std::size_t idx = 0; idx < 8; ++idx) {
    auto f = suite_instance(idx, 7, 3);
    auto r = brute_force_opt(f, all_ids(7), 7, 7);
    double full = 0.0;
    for (std::size_t i = 0; i < 3; ++i) full += f.value(i, all_ids(7));
    CHECK(r.value == doctest::Approx(full / 3.0).epsilon(1e-12));
  }
}

TEST_CASE("m=1 with k=ell is single-stage maximization") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto f = make_synthetic(SyntheticKind::Coverage, 9, 1, seed);
    auto r = brute_force_opt(f, all_ids(9), 3, 3);
    CHECK(r.value == doctest::Approx(best_single_stage(f, 9, 3)).epsilon(1e-12));
  }
}

TEST_CASE("budget refusal and limits") {
  auto f = make_synthetic(SyntheticKind::Modular, 30, 2, 1);
  CHECK(oracle_work(30, 10, 3, 2) == 30045015ull * 120 * 2);
  CHECK_THROWS_AS(brute_force_opt(f, all_ids(30), 10, 3), BudgetExceeded);
  CHECK_THROWS_AS(brute_force_opt(f, all_ids(30), 3, 2, 10), BudgetExceeded);
  CHECK(oracle_work(5, 3, 2, 4) == 10 * 3 * 4);
  CHECK(oracle_work(3, 5, 4, 1) == 1 * 1);  // budgets clipped at n
  CHECK(oracle_work(1000, 500, 250, 10) == UINT64_MAX);

  auto big = make_synthetic(SyntheticKind::Modular, 70, 1, 1);
  CHECK_THROWS_AS(brute_force_opt(big, all_ids(70), 1, 1), ArgumentError);
  CHECK_THROWS_AS(brute_force_opt(f, ElementSet{}, 1, 1), ArgumentError);
}

TEST_CASE("monotone in budgets, bounded by delta, dominates every algorithm") {
  for (std::size_t idx = 0; idx < 20; ++idx) {
    auto f = suite_instance(idx, 9, 3);
    auto ground = all_ids(9);
    double o32 = brute_force_opt(f, ground, 3, 2).value;
    CHECK(brute_force_opt(f, ground, 4, 2).value >= o32 - 1e-12);
    CHECK(brute_force_opt(f, ground, 3, 3).value >= o32 - 1e-12);

    double delta = singleton_delta(f, 9);
    CHECK(delta <= o32 + 1e-9);
    CHECK(o32 <= 3 * delta + 1e-9);

    StreamParams p;
    p.ell = 3;
    p.k = 2;
    CHECK(replacement_greedy(f, ground, 3, 2).value <= o32 + 1e-9);
    CHECK(run_streaming(ground, f, p).solution.value <= o32 + 1e-9);
    CHECK(replacement_distributed(f, ground, 2, 3, 2, idx).solution.value <= o32 + 1e-9);
    CHECK(distributed_fast(f, ground, 2, 0.5, 3, 2, idx).solution.value <= o32 + 1e-9);
  }
}

TEST_CASE("ties resolve to the lexicographically smallest set") {
  auto f = modular_family({{1, 1, 1, 1}});
  auto r = brute_force_opt(f, all_ids(4), 2, 2);
  CHECK(r.summary == ElementSet{0, 1});
  CHECK(r.per_function[0] == ElementSet{0, 1});
}
