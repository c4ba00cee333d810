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

#include <string>
#include <string_view>
#include <vector>

#include "tabstruct/raster.hpp"

namespace tabstruct {

enum class TableType { bordered, borderless };
enum class CellSource { model, recovered };

std::string_view to_string(TableType type);
std::string_view to_string(CellSource source);

/// A cell covering rows [r0, r1) and columns [c0, c1) of its table grid.
struct StructureCell {
  int r0, r1, c0, c1;
  BBox bbox;
  std::vector<BBox> content;
  CellSource source = CellSource::model;

  friend bool operator==(const StructureCell&, const StructureCell&) = default;
};

struct TableStructure {
  BBox table_bbox;
  TableType type;
  int n_rows = 1;
  int n_cols = 1;
  std::vector<StructureCell> cells;
  std::vector<int> row_separators;
  std::vector<int> col_separators;
  /// Non-fatal anomalies (clamped spans, dropped overlaps, empty tables).
  std::vector<std::string> diagnostics;
};

/// True when every cell span lies in the grid and no two spans overlap.
bool spans_valid(const TableStructure& table);

struct PageStructure {
  std::string image_id;
  std::vector<TableStructure> tables;
};

/// Structure JSON: {"format_version","image_id","tables":[{"bbox","type",
/// "n_rows","n_cols","cells":[{"row","col","bbox","content","source"}]}]}.
/// Separators and diagnostics are not serialized.
std::string serialize_structure(const PageStructure& page);
PageStructure parse_structure(std::string_view document);

}  // namespace tabstruct
