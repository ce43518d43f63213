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
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twostage/core.hpp"

namespace twostage {

// x is longitude-like, y latitude-like; both in degrees.
struct Point {
  double x = 0.0;
  double y = 0.0;
  friend bool operator==(const Point&, const Point&) = default;
};

// Demand points of one facility-location function.
struct Region {
  std::vector<Point> members;
  Point center{};
};

// Objects-per-class counts of one image.
using FeatureVector = std::vector<std::uint32_t>;

double manhattan(const Point& a, const Point& b);

// c(a, b) = 2 - 2 / (1 + exp(-200 d(a, b))) with Manhattan distance d.
// In (0, 1]; underflows to exactly 0 for far-apart points.
double facility_convenience(const Point& a, const Point& b);

// sum over demand points a of max over b in T of c(a, b); 0 for empty T.
double facility_value(const Region& region, std::span<const Point> selected);

// Exemplar-clustering gain of `selected` for one class, anchored at the
// all-zero exemplar e0. Only selected members of the class are usable
// exemplars.
double exemplar_value(std::span<const FeatureVector> features,
                      std::span<const ElementId> class_members,
                      std::span<const ElementId> selected);

double l2_distance(const FeatureVector& a, const FeatureVector& b);

class ModularFunction final : public SetFunction {
 public:
  explicit ModularFunction(std::vector<double> weights);
  double value(std::span<const ElementId> set) const override;
  std::size_t ground_size() const override { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<double> weights_;
};

// |union of the universe items covered by the selected elements|.
class CoverageFunction final : public SetFunction {
 public:
  CoverageFunction(std::size_t universe_size, std::vector<std::vector<std::uint32_t>> covers);
  double value(std::span<const ElementId> set) const override;
  std::size_t ground_size() const override { return covers_.size(); }

 private:
  std::size_t universe_size_;
  std::vector<std::vector<std::uint32_t>> covers_;
};

// Facility location over a shared set of candidate locations. The
// demand-by-candidate convenience table is computed once at construction.
class FacilityLocationFunction final : public SetFunction {
 public:
  FacilityLocationFunction(Region region, std::span<const Point> candidates);
  double value(std::span<const ElementId> set) const override;
  std::size_t ground_size() const override { return candidates_; }
  const Region& region() const { return region_; }

 private:
  Region region_;
  std::size_t candidates_;
  std::vector<double> table_;  // row-major [demand][candidate]
};

class ExemplarFunction final : public SetFunction {
 public:
  ExemplarFunction(std::shared_ptr<const std::vector<FeatureVector>> features,
                   ElementSet class_members);
  double value(std::span<const ElementId> set) const override;
  std::size_t ground_size() const override { return features_->size(); }

 private:
  std::shared_ptr<const std::vector<FeatureVector>> features_;
  ElementSet members_;
  std::vector<std::int32_t> local_index_;  // ground id -> member index or -1
  std::vector<double> to_origin_;          // d(x, e0) per member
  std::vector<double> pairwise_;           // d(x, y) over members, row-major
};

ObjectiveFamily make_facility_family(std::span<const Point> candidates,
                                     const std::vector<Region>& regions);

// One function per class with a non-empty member set.
ObjectiveFamily make_exemplar_family(std::shared_ptr<const std::vector<FeatureVector>> features,
                                     const std::vector<ElementSet>& class_members);

enum class SyntheticKind { Modular, Coverage, Facility, Mixed };

SyntheticKind parse_synthetic_kind(std::string_view name);
std::string to_string(SyntheticKind kind);

// Deterministic random family for a seed. Mixed cycles modular, coverage and
// facility functions over the same ground set.
ObjectiveFamily make_synthetic(SyntheticKind kind, std::size_t n, std::size_t m,
                               std::uint64_t seed);
ObjectiveFamily make_synthetic(std::string_view kind, std::size_t n, std::size_t m,
                               std::uint64_t seed);

}  // namespace twostage
