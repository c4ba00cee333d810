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

#include <span>
#include <vector>

#include "tabstruct/raster.hpp"
#include "tabstruct/structure.hpp"

namespace tabstruct {

enum class Orientation { horizontal, vertical };

/// A drawn rule. `position` is y for horizontal lines and x for vertical
/// ones; [start, end) is the extent along the line; all in page coordinates.
struct RulingLine {
  Orientation orientation;
  int position;
  int start;
  int end;
  int thickness = 1;

  friend bool operator==(const RulingLine&, const RulingLine&) = default;
};

struct LineDetectionParams {
  double min_len_frac = 0.5;  // of the table dimension along the line
  int min_run = 15;           // lower bound of the opening kernel length
  int bridge_gap = 3;         // gaps up to this many pixels are closed first
  int merge_dist = 3;         // parallel runs this close are one line
  int max_thickness = 5;      // thicker merged runs are solid ink, not rules
};

/// Morphological run extraction inside `table`: close small gaps, open with a
/// run kernel of length max(min_run, round(min_len_frac * dimension)), read
/// maximal runs, merge nearby parallel runs and drop short or thick ones.
std::vector<RulingLine> detect_ruling_lines(const BinaryImage& page, const BBox& table,
                                            const LineDetectionParams& params = {});

/// Row and column separator positions; both bracket the table.
struct Grid {
  std::vector<int> row_separators;
  std::vector<int> col_separators;

  int rows() const { return static_cast<int>(row_separators.size()) - 1; }
  int cols() const { return static_cast<int>(col_separators.size()) - 1; }
};

/// Collapses line positions closer than snap_tol to their rounded mean and
/// brackets them with the table edges. A cluster within snap_tol of an edge
/// is snapped onto that edge.
Grid grid_from_lines(std::span<const RulingLine> lines, const BBox& table, int snap_tol = 5);

struct BorderedParams {
  LineDetectionParams lines;
  int snap_tol = 5;
  TextDetectionParams text;
};

/// Bordered branch: ruling lines, then the grid, then text regions inside
/// each cell interior. Every grid slot becomes one 1x1 cell.
TableStructure bordered_structure(const BinaryImage& page, const BBox& table,
                                  const BorderedParams& params = {});

}  // namespace tabstruct
