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

// Ground-set ids, the set-function interface, the objective family with
// evaluation counting, and the gain primitives every algorithm uses.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "twostage/errors.hpp"

namespace twostage {

using ElementId = std::uint32_t;

// Sets are small (at most max(ell, k) elements) and kept sorted ascending so
// that every evaluation of the same set follows the same floating-point path.
using ElementSet = std::vector<ElementId>;

// Immutable per-element payloads indexed by ElementId.
template <class Payload>
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<Payload> items) : items_(std::move(items)) {
    if (items_.empty()) throw ArgumentError("ground set must not be empty");
  }

  std::size_t size() const noexcept { return items_.size(); }

  const Payload& operator[](ElementId id) const {
    if (id >= items_.size())
      throw ArgumentError("element id " + std::to_string(id) + " out of range");
    return items_[id];
  }

  const std::vector<Payload>& items() const noexcept { return items_; }

  ElementSet ids() const {
    ElementSet out(items_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<ElementId>(i);
    return out;
  }

 private:
  std::vector<Payload> items_;
};

ElementSet all_ids(std::size_t n);

// A monotone submodular set function over ids [0, ground_size()).
// Implementations must be safe to call concurrently.
class SetFunction {
 public:
  virtual ~SetFunction() = default;
  virtual double value(std::span<const ElementId> set) const = 0;
  virtual std::size_t ground_size() const = 0;
};

// F = (f_1, ..., f_m) over one ground set. Every function is shifted so that
// f_i(empty) = 0. Each call to value() counts as one evaluation.
class ObjectiveFamily {
 public:
  ObjectiveFamily(std::size_t ground_size,
                  std::vector<std::shared_ptr<const SetFunction>> functions);

  ObjectiveFamily(ObjectiveFamily&&) noexcept = default;
  ObjectiveFamily& operator=(ObjectiveFamily&&) noexcept = default;

  std::size_t size() const noexcept { return functions_.size(); }
  std::size_t ground_size() const noexcept { return ground_size_; }

  double value(std::size_t i, std::span<const ElementId> set) const;

  std::uint64_t evaluations() const noexcept {
    return evaluations_->load(std::memory_order_relaxed);
  }
  void reset_evaluations() const noexcept { evaluations_->store(0, std::memory_order_relaxed); }

  void check_index(std::size_t i) const;
  void check_element(ElementId x) const;

 private:
  std::size_t ground_size_;
  std::vector<std::shared_ptr<const SetFunction>> functions_;
  std::vector<double> offsets_;
  std::unique_ptr<std::atomic<std::uint64_t>> evaluations_;
};

// Result of an insertion or swap query. `replaced` is empty for pure
// insertions and rejections. `value_after` is f_i of the set after the move
// (f_i(A) when the move is rejected).
struct SwapOutcome {
  std::optional<ElementId> replaced;
  double gain = 0.0;
  double value_after = 0.0;
};

bool contains(std::span<const ElementId> set, ElementId x);
ElementSet with_inserted(std::span<const ElementId> set, ElementId x);
ElementSet with_swapped(std::span<const ElementId> set, ElementId in, ElementId out);
ElementSet canonical(std::span<const ElementId> set);
bool is_subset(std::span<const ElementId> sub, std::span<const ElementId> super);

// f_i(A + x) - f_i(A); exactly 0 when x is already in A.
double marginal(const ObjectiveFamily& family, std::size_t i, ElementId x,
                std::span<const ElementId> set);

// The y in A maximizing f_i(A + x - y) - f_i(A) and that gain (Delta_i).
// Ties go to the lowest id. Throws PreconditionError on empty A or x in A.
SwapOutcome rep(const ObjectiveFamily& family, std::size_t i, ElementId x,
                std::span<const ElementId> set);

// Thresholded gain used by the streaming exchange rule.
SwapOutcome nabla(const ObjectiveFamily& family, std::size_t i, ElementId x,
                  std::span<const ElementId> set, double alpha, std::size_t k);

// Additive gain used by replacement greedy.
SwapOutcome lambda_gain(const ObjectiveFamily& family, std::size_t i, ElementId x,
                        std::span<const ElementId> set, std::size_t k);

// Variants that take f_i(A) from the caller instead of evaluating it again.
SwapOutcome rep(const ObjectiveFamily& family, std::size_t i, ElementId x,
                std::span<const ElementId> set, double base);
SwapOutcome nabla(const ObjectiveFamily& family, std::size_t i, ElementId x,
                  std::span<const ElementId> set, double alpha, std::size_t k,
                  double base);
SwapOutcome lambda_gain(const ObjectiveFamily& family, std::size_t i, ElementId x,
                        std::span<const ElementId> set, std::size_t k, double base);

struct TwoStageSolution {
  ElementSet summary;
  std::vector<ElementSet> per_function;
  double value = 0.0;
  std::size_t ell = 0;
  std::size_t k = 0;

  // Throws InvariantError on |S| > ell, |T_i| > k or T_i not in S.
  void validate() const;

  bool same_sets(const TwoStageSolution& other) const {
    return summary == other.summary && per_function == other.per_function;
  }
  friend bool operator==(const TwoStageSolution&, const TwoStageSolution&) = default;
};

// 1/m * sum_i f_i(T_i), evaluated from scratch.
double evaluate_solution(const ObjectiveFamily& family, const TwoStageSolution& solution);

// Builds a solution with canonical (sorted) sets and a freshly evaluated value.
TwoStageSolution make_solution(const ObjectiveFamily& family, ElementSet summary,
                               std::vector<ElementSet> per_function, std::size_t ell,
                               std::size_t k);

TwoStageSolution empty_solution(const ObjectiveFamily& family, std::size_t ell,
                                std::size_t k);

}  // namespace twostage
