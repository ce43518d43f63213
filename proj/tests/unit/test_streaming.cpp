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
#include <list>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "twostage/bounds.hpp"
#include "twostage/oracle.hpp"
#include "twostage/streaming.hpp"

using namespace twostage;
using namespace twostage::testing;

namespace {

std::size_t log_bound(double eps, double beta, std::size_t ell) {
  return static_cast<std::size_t>(
             std::ceil(std::log((1 + eps) * beta * double(ell)) / std::log1p(eps))) +
         1;
}

}  // namespace

TEST_CASE("exchange hand trace") {
  auto f = worked_instance();
  StreamState s(f, 2, 1, 1.0, 0.25);

  CHECK(s.exchange(a));
  CHECK(s.last_average_gain() == 2.0);
  CHECK(s.per_function() == std::vector<ElementSet>{{a}, {a}});

  CHECK(s.exchange(b));
  CHECK(s.last_average_gain() == 0.5);
  CHECK(s.summary() == ElementSet{a, b});
  CHECK(s.per_function() == std::vector<ElementSet>{{a}, {b}});

  auto before = f.evaluations();
  CHECK_FALSE(s.exchange(c));
  CHECK(f.evaluations() == before);
  CHECK(s.summary() == ElementSet{a, b});
  CHECK(s.value() == 2.5);
}

TEST_CASE("exchange rejects duplicates and low averages") {
  auto f = worked_instance();
  StreamState s(f, 3, 1, 1.0, 0.25);
  CHECK(s.exchange(a));
  CHECK_FALSE(s.exchange(a));
  CHECK(s.summary() == ElementSet{a});

  StreamState high(f, 3, 1, 1.0, 10.0);
  CHECK_FALSE(high.exchange(a));
  CHECK(high.summary().empty());
  CHECK_THROWS_AS(StreamState(f, 2, 1, 1.0, 0.0), ArgumentError);
}

TEST_CASE("know-opt on the worked instance") {
  auto f = worked_instance();
  ElementSet stream{a, b, c};
  KnowOptParams p;
  p.ell = 2;
  p.k = 1;
  auto r = run_know_opt(stream, f, 3.0, p);
  CHECK(r.tau == 0.25);
  CHECK(r.solution.value == 2.5);
  CHECK(r.solution.value >= 3.0 / 6.0);

  auto none = run_know_opt(stream, f, 1000.0, p);
  CHECK(none.solution.summary.empty());
  CHECK(none.solution.value == 0.0);

  CHECK_THROWS_AS(run_know_opt(stream, f, 0.0, p), ArgumentError);
  CHECK_THROWS_AS(run_know_opt(stream, f, -1.0, p), ArgumentError);
}

TEST_CASE("threshold grid for eps=1, beta=6, ell=2, delta=3") {
  auto f = worked_instance();
  StreamParams p;
  p.epsilon = 1.0;
  p.beta = 6.0;
  p.ell = 2;
  ThresholdManager mgr(f, p);
  CHECK(mgr.instances().empty());
  mgr.update_thresholds_with(3.0);
  CHECK(mgr.delta() == 3.0);
  CHECK(mgr.active_taus() == std::vector<double>{0.125, 0.25, 0.5, 1.0, 2.0});

  std::vector<int> levels;
  for (const auto& [l, inst] : mgr.instances()) levels.push_back(l);
  mgr.update_thresholds_with(2.0);
  std::vector<int> after;
  for (const auto& [l, inst] : mgr.instances()) after.push_back(l);
  CHECK(levels == after);
  CHECK(mgr.delta() == 3.0);
}

TEST_CASE("first element creates every instance fresh") {
  auto f = worked_instance();
  StreamParams p;
  p.epsilon = 0.5;
  p.ell = 2;
  p.k = 1;
  ThresholdManager mgr(f, p);
  mgr.update_thresholds(a);
  CHECK(mgr.delta() == 2.0);
  CHECK_FALSE(mgr.instances().empty());
  for (const auto& [l, inst] : mgr.instances()) {
    CHECK(inst.state.summary().empty());
    CHECK(inst.tau <= 2.0);
    CHECK(inst.tau >= 2.0 / ((1 + 0.5) * p.resolved_beta() * 2) * (1 - 1e-12));
  }
  CHECK(mgr.instances().size() <= mgr.instance_bound());
}

TEST_CASE("default beta") {
  StreamParams p;
  p.epsilon = 1.0;
  CHECK(p.resolved_beta() == 3.5);
  p.beta = 6.0;
  CHECK(p.resolved_beta() == 6.0);
}

TEST_CASE("streaming ratio and storage bound on random instances") {
  for (std::size_t idx = 0; idx < 40; ++idx) {
    auto f = suite_instance(idx);
    StreamParams p;
    p.epsilon = 1.0;
    p.ell = 3;
    p.k = 2;
    auto r = run_streaming(all_ids(10), f, p);
    auto opt = brute_force_opt(f, all_ids(10), 3, 2);
    CHECK(r.solution.value >= opt.value / 7.0 - 1e-9);
    CHECK(r.solution.value <= opt.value + 1e-9);
    CHECK(r.peak_stored <= 3 * log_bound(1.0, 3.5, 3));
    CHECK(std::abs(evaluate_solution(f, r.solution) - r.solution.value) <= 1e-9);
  }
}

TEST_CASE("know-opt ratio on random instances") {
  for (std::size_t idx = 0; idx < 40; ++idx) {
    auto f = suite_instance(idx);
    auto opt = brute_force_opt(f, all_ids(10), 3, 2);
    KnowOptParams p;
    p.ell = 3;
    p.k = 2;
    auto r = run_know_opt(all_ids(10), f, opt.value, p);
    CHECK(r.solution.value >= opt.value / 6.0 - 1e-9);
  }
}

TEST_CASE("dominant element is selected") {
  auto f = modular_family({{0.1, 0.2, 50.0, 0.3, 0.1}});
  StreamParams p;
  p.ell = 2;
  p.k = 1;
  auto r = run_streaming(all_ids(5), f, p);
  CHECK(contains(r.solution.summary, 2));
}

TEST_CASE("instrumented runs report zero violations") {
  for (std::size_t idx = 0; idx < 40; ++idx) {
    auto f = suite_instance(idx, 12, 3);
    for (double eps : {0.2, 1.0}) {
      StreamParams p;
      p.epsilon = eps;
      p.ell = 4;
      p.k = 2;
      p.instrument = true;
      ThresholdManager mgr(f, p);
      for (ElementId u = 0; u < 12; ++u) {
        mgr.process(u);
        CHECK(mgr.instances().size() <= mgr.instance_bound());
      }
      auto d = mgr.diagnostics();
      CHECK(d.steps_checked > 0);
      CHECK(d.total_violations() == 0);
    }
  }
}

TEST_CASE("a late instance would have rejected every earlier element") {
  for (std::size_t idx = 0; idx < 30; ++idx) {
    auto f = suite_instance(idx, 10, 3);
    StreamParams p;
    p.epsilon = 0.5;
    p.ell = 3;
    p.k = 2;
    ThresholdManager mgr(f, p);
    std::set<int> seen_levels;
    for (ElementId t = 0; t < 10; ++t) {
      mgr.process(t);
      for (const auto& [l, inst] : mgr.instances()) {
        if (seen_levels.count(l) || t == 0) continue;
        // New level at time t: replay u^1..u^{t-1} into a fresh state.
        StreamState replay(f, p.ell, p.k, p.alpha, inst.tau);
        for (ElementId u = 0; u < t; ++u) CHECK_FALSE(replay.exchange(u));
      }
      for (const auto& [l, inst] : mgr.instances()) seen_levels.insert(l);
    }
  }
}

TEST_CASE("stream from any input range") {
  auto f = suite_instance(2);
  StreamParams p;
  p.ell = 3;
  p.k = 2;
  std::list<ElementId> ids;
  for (ElementId x = 0; x < 10; ++x) ids.push_back(x);
  auto from_list = run_streaming_range(ids, f, p);
  auto from_span = run_streaming(all_ids(10), f, p);
  CHECK(from_list.solution == from_span.solution);
}
