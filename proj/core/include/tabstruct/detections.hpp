// Copyright 2026 The tabstruct Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tabstruct/raster.hpp"

namespace tabstruct {

inline constexpr std::string_view kFormatVersion = "1";

enum class DetectionClass { bordered_table, borderless_table, cell };

std::string_view to_string(DetectionClass cls);
/// Throws std::invalid_argument for unknown names.
DetectionClass parse_detection_class(std::string_view name);
inline bool is_table(DetectionClass cls) { return cls != DetectionClass::cell; }

struct Point {
  int x;
  int y;
  friend bool operator==(const Point&, const Point&) = default;
};

using Polygon = std::vector<Point>;

struct DetectionInstance {
  DetectionClass cls;
  BBox bbox;
  std::optional<Polygon> mask;
  double score = 1.0;

  /// The mask's tight box when a mask is present, else bbox.
  BBox region() const;

  friend bool operator==(const DetectionInstance&, const DetectionInstance&) = default;
};

struct PageDetections {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<DetectionInstance> instances;

  friend bool operator==(const PageDetections&, const PageDetections&) = default;
};

/// Ground-truth cell with half-open row/column index spans.
struct GtCell {
  BBox bbox;
  int r0, r1, c0, c1;
  friend bool operator==(const GtCell&, const GtCell&) = default;
};

struct GtTable {
  DetectionClass cls;  // bordered_table or borderless_table
  BBox bbox;
  std::optional<Polygon> mask;
  std::optional<std::vector<GtCell>> cells;

  int n_rows() const;
  int n_cols() const;
  friend bool operator==(const GtTable&, const GtTable&) = default;
};

struct GroundTruthPage {
  std::string image_id;
  int width = 0;
  int height = 0;
  std::vector<GtTable> tables;

  friend bool operator==(const GroundTruthPage&, const GroundTruthPage&) = default;
};

/// Malformed JSON. `byte_offset` points into the input document.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : std::runtime_error(what), byte_offset_(byte_offset) {}
  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

/// Well-formed JSON that breaks a schema rule or a type invariant.
class ValidationError : public std::runtime_error {
 public:
  ValidationError(std::string image_id, std::optional<std::size_t> instance, std::string rule);

  const std::string& image_id() const { return image_id_; }
  std::optional<std::size_t> instance_index() const { return instance_; }
  const std::string& rule() const { return rule_; }

 private:
  std::string image_id_;
  std::optional<std::size_t> instance_;
  std::string rule_;
};

/// Tight box of a polygon's vertices, treating them as pixel-corner coordinates.
std::optional<BBox> polygon_bounds(const Polygon& poly);
/// At least three vertices, non-zero area, no two non-adjacent edges touching.
bool is_simple_polygon(const Polygon& poly);

std::vector<PageDetections> parse_detections(std::string_view document);
std::string serialize_detections(std::span<const PageDetections> pages);
/// Throws ValidationError on the first broken invariant.
void validate(const PageDetections& page);

std::vector<GroundTruthPage> parse_ground_truth(std::string_view document);
std::string serialize_ground_truth(std::span<const GroundTruthPage> pages);
void validate(const GroundTruthPage& page);

/// Keeps instances with score >= threshold, preserving order.
PageDetections filter_by_score(const PageDetections& page, double threshold);

struct TableGroup {
  std::size_t instance_index;  // index of the table within the page
  DetectionInstance table;
  std::vector<DetectionInstance> cells;
};

struct CellAssignment {
  std::vector<TableGroup> tables;  // every table instance, in page order
  std::size_t dropped_cells = 0;
};

/// Gives each cell to the smallest borderless table containing its region
/// center. Bordered tables get no cells; orphan cells are dropped and counted.
CellAssignment assign_cells(const PageDetections& page);

}  // namespace tabstruct
