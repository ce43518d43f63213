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

#include "twostage/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string_view>

#include "twostage/rng.hpp"

namespace twostage {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
bool parse_number(std::string_view field, T& out) {
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), out);
  return ec == std::errc() && ptr == field.data() + field.size();
}

bool looks_like_header(const std::vector<std::string_view>& fields) {
  return std::none_of(fields.begin(), fields.end(), [](std::string_view f) {
    double v;
    return parse_number(f, v);
  });
}

// Reads non-blank lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string>> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<std::pair<std::size_t, std::string>> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    lines.emplace_back(number, line);
  }
  if (lines.empty()) throw ParseError(path, 0, "file contains no rows");
  return lines;
}

}  // namespace

GroundSet<Point> load_points_csv(const std::string& path) {
  auto lines = read_lines(path);
  std::vector<Point> points;
  points.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto& [number, text] = lines[r];
    auto fields = split_fields(text);
    if (r == 0 && looks_like_header(fields)) continue;
    if (fields.size() != 2)
      throw ParseError(path, number, "expected 2 fields (lat,lon), got " +
                                         std::to_string(fields.size()));
    double lat = 0.0;
    double lon = 0.0;
    if (!parse_number(fields[0], lat) || !parse_number(fields[1], lon) ||
        !std::isfinite(lat) || !std::isfinite(lon))
      throw ParseError(path, number, "fields are not finite numbers: '" + text + "'");
    points.push_back({lon, lat});
  }
  if (points.empty()) throw ParseError(path, 0, "file contains no data rows");
  return GroundSet<Point>(std::move(points));
}

FeatureData make_feature_data(std::vector<FeatureVector> rows, std::size_t class_count) {
  if (class_count < 1) throw ArgumentError("class count must be at least 1");
  if (rows.empty()) throw ArgumentError("feature data needs at least one row");
  FeatureData data;
  data.class_members.resize(class_count);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != class_count) throw ArgumentError("feature row has the wrong arity");
    for (std::size_t c = 0; c < class_count; ++c)
      if (rows[r][c] > 0) data.class_members[c].push_back(static_cast<ElementId>(r));
  }
  data.features = std::make_shared<const std::vector<FeatureVector>>(std::move(rows));
  return data;
}

FeatureData load_features_csv(const std::string& path, std::size_t class_count) {
  if (class_count < 1) throw ArgumentError("class count must be at least 1");
  auto lines = read_lines(path);
  std::vector<FeatureVector> rows;
  rows.reserve(lines.size());
  for (std::size_t r = 0; r < lines.size(); ++r) {
    const auto& [number, text] = lines[r];
    auto fields = split_fields(text);
    if (r == 0 && looks_like_header(fields)) continue;
    if (fields.size() != class_count)
      throw ParseError(path, number, "expected " + std::to_string(class_count) +
                                         " class counts, got " + std::to_string(fields.size()));
    FeatureVector row(class_count);
    for (std::size_t c = 0; c < class_count; ++c) {
      long long v = 0;
      if (!parse_number(fields[c], v))
        throw ParseError(path, number, "field " + std::to_string(c + 1) +
                                           " is not an integer: '" + std::string(fields[c]) + "'");
      if (v < 0)
        throw ParseError(path, number, "field " + std::to_string(c + 1) + " is negative");
      if (v > static_cast<long long>(UINT32_MAX))
        throw ParseError(path, number, "field " + std::to_string(c + 1) + " is too large");
      row[c] = static_cast<std::uint32_t>(v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path, 0, "file contains no data rows");
  return make_feature_data(std::move(rows), class_count);
}

std::vector<Region> build_regions(const GroundSet<Point>& points, std::size_t m,
                                  const RegionOptions& options, std::uint64_t seed) {
  if (m < 1) throw ArgumentError("region count m must be at least 1");
  if (!(options.radius > 0.0)) throw ArgumentError("region radius must be positive");
  if (options.cap < 1) throw ArgumentError("region cap must be at least 1");
  if (points.size() == 0) throw ArgumentError("no points to build regions from");

  const auto& pts = points.items();
  double min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const auto& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }

  Rng rng(derive_seed(seed, streams::kRegions));
  std::uniform_real_distribution<double> ux(min_x, std::nextafter(max_x, INFINITY));
  std::uniform_real_distribution<double> uy(min_y, std::nextafter(max_y, INFINITY));

  std::vector<Region> regions;
  regions.reserve(m);
  std::vector<Point> nearby;
  for (std::size_t r = 0; r < m; ++r) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < options.max_attempts && !placed; ++attempt) {
      Point center{ux(rng), uy(rng)};
      nearby.clear();
      for (const auto& p : pts)
        if (manhattan(p, center) <= options.radius) nearby.push_back(p);
      if (nearby.empty()) continue;
      Region region;
      region.center = center;
      std::sample(nearby.begin(), nearby.end(), std::back_inserter(region.members),
                  options.cap, rng);
      regions.push_back(std::move(region));
      placed = true;
    }
    if (!placed)
      throw ConfigError("region " + std::to_string(r) + ": no point within radius " +
                        std::to_string(options.radius) + " after " +
                        std::to_string(options.max_attempts) +
                        " center draws; use a larger radius");
  }
  return regions;
}

std::vector<Point> generate_points(std::size_t n, std::size_t clusters, std::uint64_t seed) {
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (clusters < 1) throw ArgumentError("cluster count must be at least 1");
  Rng rng(derive_seed(seed, streams::kSynthetic));
  // Roughly the extent of Manhattan in degrees.
  std::uniform_real_distribution<double> lon(-74.02, -73.93);
  std::uniform_real_distribution<double> lat(40.70, 40.80);
  std::normal_distribution<double> spread(0.0, 0.004);
  std::vector<Point> centers(clusters);
  for (auto& c : centers) c = {lon(rng), lat(rng)};
  std::uniform_int_distribution<std::size_t> pick(0, clusters - 1);
  std::vector<Point> out(n);
  for (auto& p : out) {
    const Point& c = centers[pick(rng)];
    p = {c.x + spread(rng), c.y + spread(rng)};
  }
  return out;
}

std::vector<FeatureVector> generate_features(std::size_t n, std::size_t class_count,
                                             std::uint64_t seed) {
  if (n < 1) throw ArgumentError("n must be at least 1");
  if (class_count < 1) throw ArgumentError("class count must be at least 1");
  Rng rng(derive_seed(seed, streams::kSynthetic));
  std::uniform_int_distribution<std::size_t> classes_per_row(1, std::min<std::size_t>(3, class_count));
  std::uniform_int_distribution<std::size_t> which(0, class_count - 1);
  std::uniform_int_distribution<std::uint32_t> count(1, 4);
  std::vector<FeatureVector> rows(n, FeatureVector(class_count, 0));
  for (auto& row : rows) {
    std::size_t c = classes_per_row(rng);
    for (std::size_t j = 0; j < c; ++j) row[which(rng)] = count(rng);
  }
  return rows;
}

void write_points_csv(const std::string& path, const std::vector<Point>& points) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << "lat,lon\n";
  char buf[64];
  for (const auto& p : points) {
    auto end = std::to_chars(buf, buf + sizeof buf, p.y).ptr;
    *end++ = ',';
    end = std::to_chars(end, buf + sizeof buf, p.x).ptr;
    out.write(buf, end - buf);
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

void write_features_csv(const std::string& path, const std::vector<FeatureVector>& rows) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << row[c];
    out << '\n';
  }
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace twostage
