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

#include "twostage/oracle.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <unordered_map>

namespace twostage {

namespace {

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t binomial(std::size_t n, std::size_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t result = 1;
  for (std::size_t j = 1; j <= r; ++j) {
    // result * (n - r + j) / j stays integral at every step.
    std::uint64_t next = saturating_mul(result, n - r + j);
    if (next == std::numeric_limits<std::uint64_t>::max()) return next;
    result = next / j;
  }
  return result;
}

// Calls fn(indices) for every r-subset of [0, n) in lexicographic order.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t r, Fn&& fn) {
  if (r > n) return;
  std::vector<std::size_t> idx(r);
  for (std::size_t j = 0; j < r; ++j) idx[j] = j;
  while (true) {
    fn(static_cast<const std::vector<std::size_t>&>(idx));
    if (r == 0) return;
    std::size_t j = r;
    while (j > 0 && idx[j - 1] == n - r + (j - 1)) --j;
    if (j == 0) return;
    ++idx[j - 1];
    for (std::size_t t = j; t < r; ++t) idx[t] = idx[t - 1] + 1;
  }
}

}  // namespace

TwoStageSolution OracleResult::as_solution(std::size_t ell, std::size_t k) const {
  TwoStageSolution sol;
  sol.summary = summary;
  sol.per_function = per_function;
  sol.value = value;
  sol.ell = ell;
  sol.k = k;
  return sol;
}

std::uint64_t oracle_work(std::size_t n, std::size_t ell, std::size_t k, std::size_t m) {
  const std::size_t s = std::min(ell, n);
  const std::size_t t = std::min(k, s);
  return saturating_mul(saturating_mul(binomial(n, s), binomial(s, t)), m);
}

OracleResult brute_force_opt(const ObjectiveFamily& family, std::span<const ElementId> ground,
                             std::size_t ell, std::size_t k, std::uint64_t budget) {
  if (ell < 1) throw ArgumentError("ell must be at least 1");
  if (k < 1) throw ArgumentError("k must be at least 1");
  const ElementSet items = canonical(ground);
  if (items.empty()) throw ArgumentError("oracle needs a non-empty ground set");
  if (items.size() > 64) throw ArgumentError("oracle supports at most 64 ground elements");
  for (ElementId x : items) family.check_element(x);

  const std::size_t n = items.size();
  const std::size_t m = family.size();
  const std::size_t max_s = std::min(ell, n);
  const std::size_t max_t = std::min(k, max_s);
  const std::uint64_t work = oracle_work(n, ell, k, m);
  if (work > budget)
    throw BudgetExceeded("oracle work " + std::to_string(work) + " exceeds budget " +
                         std::to_string(budget));

  // Every candidate T (|T| <= k) is evaluated once per function.
  std::unordered_map<std::uint64_t, std::size_t> slot;
  std::vector<double> table;  // slot * m + i
  for (std::size_t t = 0; t <= max_t; ++t) {
    for_each_combination(n, t, [&](const std::vector<std::size_t>& idx) {
      std::uint64_t mask = 0;
      ElementSet set;
      for (auto j : idx) {
        mask |= std::uint64_t{1} << j;
        set.push_back(items[j]);
      }
      slot.emplace(mask, table.size() / m);
      for (std::size_t i = 0; i < m; ++i)
        table.push_back(set.empty() ? 0.0 : family.value(i, set));
    });
  }

  OracleResult best;
  best.per_function.assign(m, {});
  best.work = work;
  bool have = false;

  std::vector<double> fn_best(m);
  std::vector<ElementSet> fn_sets(m);
  for (std::size_t s = 0; s <= max_s; ++s) {
    for_each_combination(n, s, [&](const std::vector<std::size_t>& sidx) {
      ElementSet summary;
      for (auto j : sidx) summary.push_back(items[j]);
      std::fill(fn_best.begin(), fn_best.end(), -std::numeric_limits<double>::infinity());
      for (std::size_t t = 0; t <= std::min(max_t, s); ++t) {
        for_each_combination(s, t, [&](const std::vector<std::size_t>& tidx) {
          std::uint64_t mask = 0;
          ElementSet sub;
          for (auto j : tidx) {
            mask |= std::uint64_t{1} << sidx[j];
            sub.push_back(items[sidx[j]]);
          }
          const double* row = table.data() + slot.at(mask) * m;
          for (std::size_t i = 0; i < m; ++i) {
            if (row[i] > fn_best[i] || (row[i] == fn_best[i] && sub < fn_sets[i])) {
              fn_best[i] = row[i];
              fn_sets[i] = sub;
            }
          }
        });
      }
      double total = 0.0;
      for (double v : fn_best) total += v;
      total /= static_cast<double>(m);
      if (!have || total > best.value || (total == best.value && summary < best.summary)) {
        have = true;
        best.value = total;
        best.summary = summary;
        best.per_function = fn_sets;
      }
    });
  }
  return best;
}

}  // namespace twostage
