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

#include "twostage/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twostage/rng.hpp"

namespace twostage {

double manhattan(const Point& a, const Point& b) {
  return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

double facility_convenience(const Point& a, const Point& b) {
  // exp(-200 d) underflows to +0 for large d, which leaves 2 - 2/1 = 0.
  const double e = std::exp(-200.0 * manhattan(a, b));
  return 2.0 - 2.0 / (1.0 + e);
}

double facility_value(const Region& region, std::span<const Point> selected) {
  if (selected.empty()) return 0.0;
  double total = 0.0;
  for (const Point& a : region.members) {
    double best = 0.0;
    for (const Point& b : selected) best = std::max(best, facility_convenience(a, b));
    total += best;
  }
  return total;
}

double l2_distance(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) throw ArgumentError("feature vectors differ in length");
  double sum = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    double d = static_cast<double>(a[c]) - static_cast<double>(b[c]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

namespace {

double norm(const FeatureVector& a) {
  double sum = 0.0;
  for (auto v : a) sum += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(sum);
}

}  // namespace

double exemplar_value(std::span<const FeatureVector> features,
                      std::span<const ElementId> class_members,
                      std::span<const ElementId> selected) {
  if (class_members.empty()) throw ConfigError("exemplar class has no members");
  double base_loss = 0.0;
  double loss = 0.0;
  for (ElementId x : class_members) {
    const FeatureVector& fx = features[x];
    double to_origin = norm(fx);
    double nearest = to_origin;
    for (ElementId y : selected) {
      if (!contains(class_members, y)) continue;
      nearest = std::min(nearest, l2_distance(fx, features[y]));
    }
    base_loss += to_origin;
    loss += nearest;
  }
  const double n = static_cast<double>(class_members.size());
  return base_loss / n - loss / n;
}

ModularFunction::ModularFunction(std::vector<double> weights) : weights_(std::move(weights)) {
  for (double w : weights_)
    if (!(w >= 0.0) || !std::isfinite(w))
      throw ArgumentError("modular weights must be finite and non-negative");
}

double ModularFunction::value(std::span<const ElementId> set) const {
  double total = 0.0;
  for (ElementId x : set) total += weights_[x];
  return total;
}

CoverageFunction::CoverageFunction(std::size_t universe_size,
                                   std::vector<std::vector<std::uint32_t>> covers)
    : universe_size_(universe_size), covers_(std::move(covers)) {
  for (const auto& c : covers_)
    for (auto item : c)
      if (item >= universe_size_) throw ArgumentError("coverage item outside the universe");
}

double CoverageFunction::value(std::span<const ElementId> set) const {
  std::vector<bool> seen(universe_size_, false);
  std::size_t count = 0;
  for (ElementId x : set) {
    for (auto item : covers_[x]) {
      if (!seen[item]) {
        seen[item] = true;
        ++count;
      }
    }
  }
  return static_cast<double>(count);
}

FacilityLocationFunction::FacilityLocationFunction(Region region,
                                                   std::span<const Point> candidates)
    : region_(std::move(region)), candidates_(candidates.size()) {
  if (region_.members.empty()) throw ConfigError("facility region has no demand points");
  table_.resize(region_.members.size() * candidates_);
  for (std::size_t a = 0; a < region_.members.size(); ++a)
    for (std::size_t b = 0; b < candidates_; ++b)
      table_[a * candidates_ + b] = facility_convenience(region_.members[a], candidates[b]);
}

double FacilityLocationFunction::value(std::span<const ElementId> set) const {
  if (set.empty()) return 0.0;
  double total = 0.0;
  for (std::size_t a = 0; a < region_.members.size(); ++a) {
    const double* row = table_.data() + a * candidates_;
    double best = 0.0;
    for (ElementId b : set) best = std::max(best, row[b]);
    total += best;
  }
  return total;
}

ExemplarFunction::ExemplarFunction(std::shared_ptr<const std::vector<FeatureVector>> features,
                                   ElementSet class_members)
    : features_(std::move(features)), members_(canonical(class_members)) {
  if (!features_ || features_->empty()) throw ConfigError("exemplar objective needs features");
  if (members_.empty()) throw ConfigError("exemplar class has no members");
  const auto& fv = *features_;
  local_index_.assign(fv.size(), -1);
  for (std::size_t j = 0; j < members_.size(); ++j) {
    if (members_[j] >= fv.size()) throw ArgumentError("class member id out of range");
    local_index_[members_[j]] = static_cast<std::int32_t>(j);
  }
  const std::size_t c = members_.size();
  to_origin_.resize(c);
  pairwise_.resize(c * c);
  for (std::size_t a = 0; a < c; ++a) {
    to_origin_[a] = norm(fv[members_[a]]);
    for (std::size_t b = 0; b < c; ++b)
      pairwise_[a * c + b] = l2_distance(fv[members_[a]], fv[members_[b]]);
  }
}

double ExemplarFunction::value(std::span<const ElementId> set) const {
  const std::size_t c = members_.size();
  double base_loss = 0.0;
  double loss = 0.0;
  for (std::size_t a = 0; a < c; ++a) {
    double nearest = to_origin_[a];
    for (ElementId y : set) {
      std::int32_t b = local_index_[y];
      if (b >= 0) nearest = std::min(nearest, pairwise_[a * c + static_cast<std::size_t>(b)]);
    }
    base_loss += to_origin_[a];
    loss += nearest;
  }
  const double n = static_cast<double>(c);
  return base_loss / n - loss / n;
}

ObjectiveFamily make_facility_family(std::span<const Point> candidates,
                                     const std::vector<Region>& regions) {
  std::vector<std::shared_ptr<const SetFunction>> fns;
  fns.reserve(regions.size());
  for (const auto& r : regions)
    fns.push_back(std::make_shared<FacilityLocationFunction>(r, candidates));
  return ObjectiveFamily(candidates.size(), std::move(fns));
}

ObjectiveFamily make_exemplar_family(std::shared_ptr<const std::vector<FeatureVector>> features,
                                     const std::vector<ElementSet>& class_members) {
  std::vector<std::shared_ptr<const SetFunction>> fns;
  for (const auto& members : class_members)
    if (!members.empty()) fns.push_back(std::make_shared<ExemplarFunction>(features, members));
  if (fns.empty()) throw ConfigError("no class has any member; exemplar family is empty");
  const std::size_t n = features->size();
  return ObjectiveFamily(n, std::move(fns));
}

SyntheticKind parse_synthetic_kind(std::string_view name) {
  if (name == "modular") return SyntheticKind::Modular;
  if (name == "coverage") return SyntheticKind::Coverage;
  if (name == "facility") return SyntheticKind::Facility;
  if (name == "mixed") return SyntheticKind::Mixed;
  throw ArgumentError("unknown synthetic objective kind '" + std::string(name) + "'");
}

std::string to_string(SyntheticKind kind) {
  switch (kind) {
    case SyntheticKind::Modular: return "modular";
    case SyntheticKind::Coverage: return "coverage";
    case SyntheticKind::Facility: return "facility";
    case SyntheticKind::Mixed: return "mixed";
  }
  return "unknown";
}

namespace {

// Synthetic facility instances live in a box small enough that the
// convenience score varies across it.
constexpr double kBox = 0.05;
constexpr double kRegionHalfWidth = 0.01;
constexpr std::size_t kRegionPoints = 10;

std::shared_ptr<const SetFunction> random_modular(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<int> weight(0, 9);
  std::vector<double> w(n);
  for (auto& x : w) x = weight(rng);
  return std::make_shared<ModularFunction>(std::move(w));
}

std::shared_ptr<const SetFunction> random_coverage(std::size_t n, Rng& rng) {
  const std::size_t universe = std::max<std::size_t>(8, n);
  std::uniform_int_distribution<std::size_t> count(1, 4);
  std::uniform_int_distribution<std::uint32_t> item(0, static_cast<std::uint32_t>(universe - 1));
  std::vector<std::vector<std::uint32_t>> covers(n);
  for (auto& c : covers) {
    std::size_t len = count(rng);
    for (std::size_t j = 0; j < len; ++j) c.push_back(item(rng));
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  return std::make_shared<CoverageFunction>(universe, std::move(covers));
}

std::shared_ptr<const SetFunction> random_facility(std::span<const Point> candidates,
                                                   Rng& rng) {
  std::uniform_real_distribution<double> coord(0.0, kBox);
  std::uniform_real_distribution<double> jitter(-kRegionHalfWidth, kRegionHalfWidth);
  Point center{coord(rng), coord(rng)};
  Region region;
  for (std::size_t j = 0; j < kRegionPoints; ++j)
    region.members.push_back({center.x + jitter(rng), center.y + jitter(rng)});
  return std::make_shared<FacilityLocationFunction>(std::move(region), candidates);
}

}  // namespace

ObjectiveFamily make_synthetic(SyntheticKind kind, std::size_t n, std::size_t m,
                               std::uint64_t seed) {
  if (n < 1) throw ArgumentError("synthetic family needs n >= 1");
  if (m < 1) throw ArgumentError("synthetic family needs m >= 1");

  std::vector<Point> candidates;
  if (kind == SyntheticKind::Facility || kind == SyntheticKind::Mixed) {
    Rng rng(derive_seed(seed, streams::kSynthetic));
    std::uniform_real_distribution<double> coord(0.0, kBox);
    candidates.resize(n);
    for (auto& p : candidates) p = {coord(rng), coord(rng)};
  }

  std::vector<std::shared_ptr<const SetFunction>> fns;
  fns.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    Rng rng(derive_seed(seed, streams::kSynthetic + 1 + i));
    SyntheticKind k = kind;
    if (kind == SyntheticKind::Mixed) {
      constexpr SyntheticKind cycle[] = {SyntheticKind::Modular, SyntheticKind::Coverage,
                                         SyntheticKind::Facility};
      k = cycle[i % 3];
    }
    switch (k) {
      case SyntheticKind::Modular: fns.push_back(random_modular(n, rng)); break;
      case SyntheticKind::Coverage: fns.push_back(random_coverage(n, rng)); break;
      case SyntheticKind::Facility: fns.push_back(random_facility(candidates, rng)); break;
      case SyntheticKind::Mixed: break;
    }
  }
  return ObjectiveFamily(n, std::move(fns));
}

ObjectiveFamily make_synthetic(std::string_view kind, std::size_t n, std::size_t m,
                               std::uint64_t seed) {
  return make_synthetic(parse_synthetic_kind(kind), n, m, seed);
}

}  // namespace twostage
