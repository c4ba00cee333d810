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
#include <string>
#include <vector>

#include "tabstruct/raster.hpp"
#include "tabstruct/structure.hpp"

namespace tabstruct {

enum class Axis { row, column };

/// Pixel interval [start, end) occupied by one row or column of cells.
struct Band {
  Axis axis;
  int start;
  int end;
  int index;

  friend bool operator==(const Band&, const Band&) = default;
};

/// Groups cell intervals on `axis` into disjoint bands, ordered by index.
///
/// Cells are visited by interval center. A cell joins the current band when
/// the overlap is at least overlap_frac of the shorter interval, otherwise it
/// opens a new band. Cells longer than span_factor times the median extent
/// are span candidates and do not seed bands. Bands that still overlap after
/// the sweep are split at the midpoint of their overlap.
std::vector<Band> cluster_bands(std::span<const BBox> cells, Axis axis, double overlap_frac = 0.5,
                                double span_factor = 1.8);

/// Table edges on `axis` plus the midpoint of every gap between consecutive
/// bands. Midpoints that would break strict ordering are skipped.
std::vector<int> estimate_separators(std::span<const Band> bands, const BBox& table, Axis axis);

/// Half-open slot index range [lo, hi) that an interval covers.
struct SlotSpan {
  int lo;
  int hi;
  bool clamped;  // the interval fell (partly) outside the separators
};

/// lo = last separator <= start + margin, hi = first separator >= end - margin,
/// clamped into the grid with hi > lo.
SlotSpan span_on_axis(int start, int end, std::span<const int> separators, int margin);

struct RecoveryParams {
  int inset = 4;  // pixels trimmed from each slot side before text search
  int margin = 2;
  TextDetectionParams text;
};

struct RecoveredCell {
  int row;
  int col;
  BBox bbox;  // union of the text found in the slot
  std::vector<BBox> content;
};

/// Runs text detection in every grid slot not covered by a model cell span.
std::vector<RecoveredCell> recover_missing_cells(const BinaryImage& page, const BBox& table,
                                                 std::span<const int> row_seps,
                                                 std::span<const int> col_seps,
                                                 std::span<const BBox> model_cells,
                                                 const RecoveryParams& params = {});

struct CellCandidate {
  BBox bbox;
  CellSource source = CellSource::model;
  std::vector<BBox> content;
};

struct SpanAssignment {
  std::vector<StructureCell> cells;  // sorted by (r0, c0)
  std::vector<std::string> diagnostics;
};

/// Maps every candidate onto grid spans. On overlap, model cells beat
/// recovered ones, then larger areas win; a loser is shrunk to the slot under
/// its center, or dropped if that slot is taken as well.
SpanAssignment assign_spans(std::span<const CellCandidate> cells, std::span<const int> row_seps,
                            std::span<const int> col_seps, int margin = 2);

struct BorderlessParams {
  double overlap_frac = 0.5;
  double span_factor = 1.8;
  int margin = 2;
  int recovery_inset = 4;
  TextDetectionParams text;
};

/// Borderless branch: bands, separators, recovery of undetected cells, spans.
TableStructure borderless_structure(const BinaryImage& page, const BBox& table,
                                    std::span<const BBox> model_cells,
                                    const BorderlessParams& params = {});

}  // namespace tabstruct
