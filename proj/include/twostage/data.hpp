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

// CSV ingestion and facility regions, plus synthetic dataset writers.

#include <cstdint>
#include <string>
#include <vector>

#include "twostage/core.hpp"
#include "twostage/objectives.hpp"

namespace twostage {

// One point per "lat,lon" row, ids in row order. A first row without any
// numeric field is treated as a header.
GroundSet<Point> load_points_csv(const std::string& path);

struct FeatureData {
  std::shared_ptr<const std::vector<FeatureVector>> features;
  // class_members[c] = rows with a positive count for class c (0-based).
  std::vector<ElementSet> class_members;

  std::size_t size() const { return features ? features->size() : 0; }
};

FeatureData make_feature_data(std::vector<FeatureVector> rows, std::size_t class_count);
FeatureData load_features_csv(const std::string& path, std::size_t class_count);

struct RegionOptions {
  double radius = 0.009;  // Manhattan radius in degrees, about 1 km
  std::size_t cap = 10;   // demand points kept per region
  std::size_t max_attempts = 1000;
};

// m regions around centers drawn uniformly in the points' bounding box; each
// keeps up to `cap` points sampled without replacement from those within
// `radius` of its center. Centers that capture nothing are redrawn.
std::vector<Region> build_regions(const GroundSet<Point>& points, std::size_t m,
                                  const RegionOptions& options, std::uint64_t seed);

// Clustered pick-up-like points around a Manhattan-sized box.
std::vector<Point> generate_points(std::size_t n, std::size_t clusters, std::uint64_t seed);
// Sparse object-count vectors, 1-3 classes per row.
std::vector<FeatureVector> generate_features(std::size_t n, std::size_t class_count,
                                             std::uint64_t seed);

void write_points_csv(const std::string& path, const std::vector<Point>& points);
void write_features_csv(const std::string& path, const std::vector<FeatureVector>& rows);

}  // namespace twostage
