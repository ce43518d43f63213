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

#include <numeric>

#include "doctest.h"
#include "test_support.hpp"
#include "twostage/bounds.hpp"
#include "twostage/greedy.hpp"
#include "twostage/oracle.hpp"

using namespace twostage;
using namespace twostage::testing;

TEST_CASE("worked instance: ell=2, k=1") {
  auto f = worked_instance();
  GreedyTrace trace;
  auto sol = replacement_greedy(f, all_ids(3), 2, 1, &trace);
  CHECK(sol.summary == ElementSet{a, c});
  CHECK(sol.per_function == std::vector<ElementSet>{{a}, {c}});
  CHECK(sol.value == 3.0);
  REQUIRE(trace.rounds.size() == 2);
  CHECK(trace.rounds[0].selected == a);
  CHECK(trace.rounds[0].total_gain == 4.0);
  CHECK(trace.rounds[1].selected == c);
  CHECK(trace.rounds[1].total_gain == 2.0);
  CHECK(trace.rounds[1].swapped);

  auto opt = brute_force_opt(f, all_ids(3), 2, 1);
  CHECK(sol.value == opt.value);
}

TEST_CASE("budgets covering everything select everything") {
  auto f = modular_family({{1, 4, 2, 3, 5}});
  auto sol = replacement_greedy(f, all_ids(5), 5, 5);
  CHECK(sol.summary == all_ids(5));
  CHECK(sol.per_function[0] == all_ids(5));
}

TEST_CASE("argument checks") {
  auto f = worked_instance();
  CHECK_THROWS_AS(replacement_greedy(f, all_ids(3), 0, 1), ArgumentError);
  CHECK_THROWS_AS(replacement_greedy(f, all_ids(3), 2, 0), ArgumentError);
  CHECK_THROWS_AS(replacement_greedy(f, all_ids(3), 1, 2), ArgumentError);
  CHECK_THROWS_AS(replacement_greedy(f, ElementSet{}, 2, 1), ArgumentError);
}

TEST_CASE("zero-gain rounds stop early") {
  auto f = modular_family({{2, 0, 0, 0}});
  auto sol = replacement_greedy(f, all_ids(4), 3, 1);
  CHECK(sol.summary == ElementSet{0});
  CHECK(sol.value == 2.0);
}

TEST_CASE("random coverage instances meet the greedy guarantee") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto f = make_synthetic(SyntheticKind::Coverage, 10, 3, seed);
    auto sol = replacement_greedy(f, all_ids(10), 3, 2);
    auto opt = brute_force_opt(f, all_ids(10), 3, 2);
    CHECK(sol.value >= bounds::greedy_ratio() * opt.value - 1e-9);
    CHECK(sol.value <= opt.value + 1e-9);
  }
}

TEST_CASE("trace values are non-decreasing; insertion-only gains are non-increasing") {
  for (std::size_t idx = 0; idx < 40; ++idx) {
    auto f = suite_instance(idx, 12, 3);
    GreedyTrace trace;
    replacement_greedy(f, all_ids(12), 6, 3, &trace);
    double prev_value = 0.0;
    double prev_gain = INFINITY;
    bool insertion_only = true;
    for (const auto& r : trace.rounds) {
      CHECK(r.value >= prev_value - 1e-12);
      prev_value = r.value;
      insertion_only = insertion_only && !r.swapped;
      if (insertion_only) CHECK(r.total_gain <= prev_gain + 1e-12);
      prev_gain = r.total_gain;
    }
  }
}

TEST_CASE("result does not depend on candidate order") {
  std::mt19937_64 rng(17);
  for (std::size_t idx = 0; idx < 20; ++idx) {
    auto f = suite_instance(idx, 12, 3);
    auto ref = replacement_greedy(f, all_ids(12), 4, 2);
    for (int p = 0; p < 5; ++p) {
      ElementSet shuffled = all_ids(12);
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(replacement_greedy(f, shuffled, 4, 2) == ref);
    }
  }
}
