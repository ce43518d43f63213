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

#include <cmath>
#include <numeric>

#include "doctest.h"
#include "test_support.hpp"
#include "twostage/distributed.hpp"
#include "twostage/greedy.hpp"
#include "twostage/streaming.hpp"

using namespace twostage;
using namespace twostage::testing;

namespace {

bool same_solutions(const WorkerOutput& x, const WorkerOutput& y) {
  return x.solutions == y.solutions;
}

}  // namespace

TEST_CASE("partition") {
  SUBCASE("single machine") {
    auto plan = partition(all_ids(50), 1, 9);
    REQUIRE(plan.parts.size() == 1);
    CHECK(plan.parts[0] == all_ids(50));
  }
  SUBCASE("binomial concentration") {
    const std::size_t n = 10000, machines = 4;
    auto plan = partition(all_ids(n), machines, 12345);
    const double mean = double(n) / machines;
    const double sigma = std::sqrt(n * (1.0 / machines) * (1.0 - 1.0 / machines));
    std::size_t total = 0;
    for (const auto& part : plan.parts) {
      CHECK(std::abs(double(part.size()) - mean) <= 4 * sigma);
      CHECK(std::is_sorted(part.begin(), part.end()));
      total += part.size();
    }
    CHECK(total == n);
  }
  SUBCASE("deterministic and independent of input order") {
    auto p1 = partition(all_ids(200), 5, 3);
    ElementSet reversed = all_ids(200);
    std::reverse(reversed.begin(), reversed.end());
    auto p2 = partition(reversed, 5, 3);
    CHECK(p1.parts == p2.parts);
    CHECK(p1.machine_of(17) == p2.machine_of(17));
    auto p3 = partition(all_ids(200), 5, 4);
    CHECK(p1.parts != p3.parts);
  }
  SUBCASE("errors") { CHECK_THROWS_AS(partition(all_ids(5), 0, 1), ArgumentError); }
}

TEST_CASE("replacement distributed") {
  SUBCASE("one machine is at least as good as central greedy") {
    for (std::size_t idx = 0; idx < 12; ++idx) {
      auto f = suite_instance(idx, 12, 3);
      auto greedy = replacement_greedy(f, all_ids(12), 3, 2);
      auto r = replacement_distributed(f, all_ids(12), 1, 3, 2, 5);
      CHECK(r.solution.value >= greedy.value - 1e-12);
    }
  }
  SUBCASE("invariants with three machines") {
    for (std::size_t idx = 0; idx < 12; ++idx) {
      auto f = suite_instance(idx, 12, 3);
      auto r = replacement_distributed(f, all_ids(12), 3, 3, 2, idx);
      r.solution.validate();
      CHECK(std::abs(evaluate_solution(f, r.solution) - r.solution.value) <= 1e-9);
      CHECK(r.solution.value >= r.best_worker.value);
      CHECK(r.merge_candidates <= 3 * 3);
      for (const auto& w : r.workers)
        for (const auto& s : w.solutions) CHECK(r.solution.value >= s.solution.value);
    }
  }
  SUBCASE("thread count does not change the result") {
    auto f = suite_instance(3, 40, 4);
    DistributedOptions serial{1}, parallel{4};
    auto x = replacement_distributed(f, all_ids(40), 5, 4, 2, 77, serial);
    auto y = replacement_distributed(f, all_ids(40), 5, 4, 2, 77, parallel);
    CHECK(x.solution == y.solution);
    CHECK(x.workers == y.workers);
  }
  SUBCASE("errors") {
    auto f = suite_instance(0);
    CHECK_THROWS_AS(replacement_distributed(f, all_ids(10), 0, 3, 2, 1), ArgumentError);
    CHECK_THROWS_AS(replacement_distributed(f, all_ids(10), 2, 2, 3, 1), ArgumentError);
  }
}

TEST_CASE("pseudo streaming") {
  auto f = suite_instance(5, 12, 3);
  StreamParams p;
  p.epsilon = 0.5;
  p.ell = 3;
  p.k = 2;

  SUBCASE("enumeration order is irrelevant") {
    ElementSet part{1, 4, 5, 8, 10, 11};
    auto ref = pseudo_streaming(part, f, p);
    std::mt19937_64 rng(1);
    for (int t = 0; t < 10; ++t) {
      std::shuffle(part.begin(), part.end(), rng);
      CHECK(pseudo_streaming(part, f, p) == ref);
    }
  }
  SUBCASE("singleton partition") {
    auto out = pseudo_streaming(ElementSet{6}, f, p);
    CHECK_FALSE(out.solutions.empty());
    for (const auto& s : out.solutions) CHECK(is_subset(s.solution.summary, ElementSet{6}));
  }
  SUBCASE("json round trip") {
    auto out = pseudo_streaming(all_ids(12), f, p);
    out.machine = 3;
    auto back = worker_output_from_json(to_json(out));
    CHECK(back == out);
    CHECK(to_json(back) == to_json(out));
  }
  SUBCASE("elements that change nothing can be added together") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 30; ++trial) {
      auto g = suite_instance(trial, 8, 2);
      ElementSet all = all_ids(8);
      std::shuffle(all.begin(), all.end(), rng);
      ElementSet part = canonical(ElementSet(all.begin(), all.begin() + 4));
      auto ref = pseudo_streaming(part, g, p);
      ElementSet qualifying;
      for (auto it = all.begin() + 4; it != all.end(); ++it)
        if (same_solutions(pseudo_streaming(with_inserted(part, *it), g, p), ref))
          qualifying.push_back(*it);
      ElementSet merged = part;
      merged.insert(merged.end(), qualifying.begin(), qualifying.end());
      CHECK(same_solutions(pseudo_streaming(canonical(merged), g, p), ref));
    }
  }
}

TEST_CASE("distributed fast") {
  SUBCASE("one machine beats sorted streaming") {
    for (std::size_t idx = 0; idx < 12; ++idx) {
      auto f = suite_instance(idx, 12, 3);
      StreamParams p;
      p.epsilon = 0.1;
      p.ell = 3;
      p.k = 2;
      auto streamed = run_streaming(all_ids(12), f, p);
      auto r = distributed_fast(f, all_ids(12), 1, 0.1, 3, 2, 4);
      CHECK(r.solution.value >= streamed.solution.value - 1e-12);
    }
  }
  SUBCASE("merge candidates are bounded") {
    for (std::size_t idx = 0; idx < 12; ++idx) {
      auto f = suite_instance(idx, 30, 3);
      const std::size_t machines = 3, ell = 4;
      const double eps = 0.5, beta = (6 + eps) / (1 + eps);
      auto r = distributed_fast(f, all_ids(30), machines, eps, ell, 2, idx);
      std::size_t bound =
          static_cast<std::size_t>(std::ceil(std::log((1 + eps) * beta * ell) / std::log1p(eps))) + 1;
      CHECK(r.merge_candidates <= machines * ell * bound);
      CHECK(r.solution.value >= r.best_worker.value);
      r.solution.validate();
    }
  }
  SUBCASE("thread count does not change the result") {
    auto f = suite_instance(6, 40, 4);
    auto x = distributed_fast(f, all_ids(40), 4, 0.5, 4, 2, 8, 1.0, {1});
    auto y = distributed_fast(f, all_ids(40), 4, 0.5, 4, 2, 8, 1.0, {3});
    CHECK(x.solution == y.solution);
    CHECK(x.workers == y.workers);
  }
  SUBCASE("bad epsilon") {
    auto f = suite_instance(0);
    CHECK_THROWS_AS(distributed_fast(f, all_ids(10), 2, 0.0, 3, 2, 1), ArgumentError);
  }
}

TEST_CASE("machine count recommendation") {
  CHECK(recommend_machine_count(10000, 25, DistributedVariant::Greedy) == 20);
  CHECK(recommend_machine_count(10000, 25, DistributedVariant::Fast) == 4);
  CHECK(recommend_machine_count(1, 1, DistributedVariant::Greedy) == 1);
  CHECK(recommend_machine_count(1, 1, DistributedVariant::Fast) == 1);
  CHECK(recommend_machine_count(4000, 25, DistributedVariant::Fast) == 3);
  CHECK_THROWS_AS(recommend_machine_count(0, 1, DistributedVariant::Fast), ArgumentError);
}
