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

#include "twostage/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace twostage {

ElementSet all_ids(std::size_t n) {
  ElementSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<ElementId>(i);
  return out;
}

ObjectiveFamily::ObjectiveFamily(std::size_t ground_size,
                                 std::vector<std::shared_ptr<const SetFunction>> functions)
    : ground_size_(ground_size),
      functions_(std::move(functions)),
      evaluations_(std::make_unique<std::atomic<std::uint64_t>>(0)) {
  if (ground_size_ == 0) throw ArgumentError("ground set must not be empty");
  if (functions_.empty()) throw ArgumentError("objective family needs at least one function");
  offsets_.reserve(functions_.size());
  for (const auto& f : functions_) {
    if (!f) throw ArgumentError("null set function");
    if (f->ground_size() != ground_size_)
      throw ArgumentError("set function ground size does not match the family");
    double empty = f->value({});
    if (!std::isfinite(empty)) throw ArgumentError("f(empty) is not finite");
    offsets_.push_back(empty);
  }
}

void ObjectiveFamily::check_index(std::size_t i) const {
  if (i >= functions_.size())
    throw ArgumentError("function index " + std::to_string(i) + " out of range (m=" +
                        std::to_string(functions_.size()) + ")");
}

void ObjectiveFamily::check_element(ElementId x) const {
  if (x >= ground_size_)
    throw ArgumentError("element id " + std::to_string(x) + " out of range (n=" +
                        std::to_string(ground_size_) + ")");
}

double ObjectiveFamily::value(std::size_t i, std::span<const ElementId> set) const {
  check_index(i);
  for (ElementId x : set) check_element(x);
  evaluations_->fetch_add(1, std::memory_order_relaxed);
  double v = functions_[i]->value(set) - offsets_[i];
  if (!std::isfinite(v)) throw StateError("set function returned a non-finite value");
  return v;
}

bool contains(std::span<const ElementId> set, ElementId x) {
  return std::find(set.begin(), set.end(), x) != set.end();
}

ElementSet canonical(std::span<const ElementId> set) {
  ElementSet out(set.begin(), set.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ElementSet with_inserted(std::span<const ElementId> set, ElementId x) {
  ElementSet out;
  out.reserve(set.size() + 1);
  out.assign(set.begin(), set.end());
  out.insert(std::upper_bound(out.begin(), out.end(), x), x);
  if (!std::is_sorted(set.begin(), set.end())) std::sort(out.begin(), out.end());
  return out;
}

ElementSet with_swapped(std::span<const ElementId> set, ElementId in, ElementId out_id) {
  ElementSet out(set.begin(), set.end());
  auto it = std::find(out.begin(), out.end(), out_id);
  if (it == out.end()) throw PreconditionError("swapped-out element is not in the set");
  *it = in;
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subset(std::span<const ElementId> sub, std::span<const ElementId> super) {
  return std::all_of(sub.begin(), sub.end(), [&](ElementId x) { return contains(super, x); });
}

double marginal(const ObjectiveFamily& family, std::size_t i, ElementId x,
                std::span<const ElementId> set) {
  family.check_index(i);
  family.check_element(x);
  if (contains(set, x)) return 0.0;
  ElementSet bigger = with_inserted(set, x);
  return family.value(i, bigger) - family.value(i, set);
}

SwapOutcome rep(const ObjectiveFamily& family, std::size_t i, ElementId x,
                std::span<const ElementId> set, double base) {
  family.check_index(i);
  family.check_element(x);
  if (set.empty()) throw PreconditionError("rep requires a non-empty set");
  if (contains(set, x)) throw PreconditionError("rep requires x outside the set");

  SwapOutcome best;
  for (ElementId y : set) {
    ElementSet swapped = with_swapped(set, x, y);
    double v = family.value(i, swapped);
    double gain = v - base;
    if (!best.replaced || gain > best.gain || (gain == best.gain && y < *best.replaced)) {
      best.replaced = y;
      best.gain = gain;
      best.value_after = v;
    }
  }
  return best;
}

SwapOutcome rep(const ObjectiveFamily& family, std::size_t i, ElementId x,
                std::span<const ElementId> set) {
  family.check_index(i);
  family.check_element(x);
  if (set.empty()) throw PreconditionError("rep requires a non-empty set");
  if (contains(set, x)) throw PreconditionError("rep requires x outside the set");
  return rep(family, i, x, set, family.value(i, set));
}

namespace {

void check_budget(std::span<const ElementId> set, std::size_t k) {
  if (k == 0) throw ArgumentError("per-function budget k must be at least 1");
  if (set.size() > k)
    throw StateError("per-function set holds " + std::to_string(set.size()) +
                     " elements, more than k=" + std::to_string(k));
}

SwapOutcome rejected(double base) { return SwapOutcome{std::nullopt, 0.0, base}; }

}  // namespace

SwapOutcome nabla(const ObjectiveFamily& family, std::size_t i, ElementId x,
                  std::span<const ElementId> set, double alpha, std::size_t k,
                  double base) {
  family.check_index(i);
  family.check_element(x);
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  check_budget(set, k);
  if (contains(set, x)) return rejected(base);

  const double threshold = (alpha / static_cast<double>(k)) * base;
  if (set.size() < k) {
    ElementSet bigger = with_inserted(set, x);
    double v = family.value(i, bigger);
    double gain = v - base;
    if (gain >= threshold && gain > 0.0) return SwapOutcome{std::nullopt, gain, v};
    return rejected(base);
  }
  SwapOutcome swap = rep(family, i, x, set, base);
  if (swap.gain >= threshold && swap.gain > 0.0) return swap;
  return rejected(base);
}

SwapOutcome nabla(const ObjectiveFamily& family, std::size_t i, ElementId x,
                  std::span<const ElementId> set, double alpha, std::size_t k) {
  family.check_index(i);
  family.check_element(x);
  if (!(alpha > 0.0)) throw ArgumentError("alpha must be positive");
  check_budget(set, k);
  return nabla(family, i, x, set, alpha, k, family.value(i, set));
}

SwapOutcome lambda_gain(const ObjectiveFamily& family, std::size_t i, ElementId x,
                        std::span<const ElementId> set, std::size_t k, double base) {
  family.check_index(i);
  family.check_element(x);
  check_budget(set, k);
  if (contains(set, x)) return rejected(base);

  if (set.size() < k) {
    ElementSet bigger = with_inserted(set, x);
    double v = family.value(i, bigger);
    return SwapOutcome{std::nullopt, v - base, v};
  }
  SwapOutcome swap = rep(family, i, x, set, base);
  if (swap.gain > 0.0) return swap;
  return rejected(base);
}

SwapOutcome lambda_gain(const ObjectiveFamily& family, std::size_t i, ElementId x,
                        std::span<const ElementId> set, std::size_t k) {
  family.check_index(i);
  family.check_element(x);
  check_budget(set, k);
  return lambda_gain(family, i, x, set, k, family.value(i, set));
}

void TwoStageSolution::validate() const {
  if (summary.size() > ell)
    throw InvariantError("summary holds " + std::to_string(summary.size()) +
                         " elements, more than ell=" + std::to_string(ell));
  if (canonical(summary).size() != summary.size())
    throw InvariantError("summary contains duplicate elements");
  for (std::size_t i = 0; i < per_function.size(); ++i) {
    const auto& t = per_function[i];
    if (t.size() > k)
      throw InvariantError("T_" + std::to_string(i) + " holds more than k elements");
    if (!is_subset(t, summary))
      throw InvariantError("T_" + std::to_string(i) + " is not a subset of the summary");
  }
}

double evaluate_solution(const ObjectiveFamily& family, const TwoStageSolution& solution) {
  if (solution.per_function.size() != family.size())
    throw ArgumentError("solution has " + std::to_string(solution.per_function.size()) +
                        " per-function sets, family has m=" + std::to_string(family.size()));
  double total = 0.0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    const auto& t = solution.per_function[i];
    if (!is_subset(t, solution.summary))
      throw InvariantError("T_" + std::to_string(i) + " is not a subset of the summary");
    if (!t.empty()) total += family.value(i, t);
  }
  return total / static_cast<double>(family.size());
}

TwoStageSolution make_solution(const ObjectiveFamily& family, ElementSet summary,
                               std::vector<ElementSet> per_function, std::size_t ell,
                               std::size_t k) {
  TwoStageSolution sol;
  sol.summary = canonical(summary);
  sol.per_function.reserve(per_function.size());
  for (auto& t : per_function) sol.per_function.push_back(canonical(t));
  sol.ell = ell;
  sol.k = k;
  sol.value = evaluate_solution(family, sol);
  return sol;
}

TwoStageSolution empty_solution(const ObjectiveFamily& family, std::size_t ell,
                                std::size_t k) {
  TwoStageSolution sol;
  sol.per_function.assign(family.size(), {});
  sol.ell = ell;
  sol.k = k;
  return sol;
}

}  // namespace twostage
