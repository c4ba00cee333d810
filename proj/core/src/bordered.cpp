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

#include "tabstruct/bordered.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tabstruct {

namespace {

BinaryImage transpose(const BinaryImage& img) {
  BinaryImage out(img.height(), img.width());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.set(y, x, img.at(x, y));
  }
  return out;
}

struct Run {
  int row;
  int start;
  int end;
};

// Horizontal lines of `crop` in crop coordinates.
std::vector<RulingLine> horizontal_lines(const BinaryImage& crop, const LineDetectionParams& p) {
  const int w = crop.width();
  const int kernel = std::max(p.min_run, static_cast<int>(std::lround(p.min_len_frac * w)));
  if (kernel > w) return {};

  BinaryImage img = crop;
  if (p.bridge_gap > 0) {
    img = erode_binary(dilate_binary(img, p.bridge_gap + 1, 1), p.bridge_gap + 1, 1);
  }
  img = dilate_binary(erode_binary(img, kernel, 1), kernel, 1);

  std::vector<Run> runs;
  for (int y = 0; y < img.height(); ++y) {
    int x = 0;
    while (x < w) {
      if (!img.at(x, y)) {
        ++x;
        continue;
      }
      const int start = x;
      while (x < w && img.at(x, y)) ++x;
      runs.push_back({y, start, x});
    }
  }

  // Union runs on nearby rows with overlapping extents.
  std::vector<std::size_t> parent(runs.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t i = 0; i < runs.size(); ++i) {
    for (std::size_t j = i + 1; j < runs.size() && runs[j].row - runs[i].row <= p.merge_dist; ++j) {
      if (runs[j].row == runs[i].row) continue;
      if (std::min(runs[i].end, runs[j].end) > std::max(runs[i].start, runs[j].start)) {
        parent[find(j)] = find(i);
      }
    }
  }

  struct Group {
    int y0 = 0, y1 = -1, x0 = 0, x1 = 0;
    bool used = false;
  };
  std::vector<Group> groups(runs.size());
  for (std::size_t i = 0; i < runs.size(); ++i) {
    auto& g = groups[find(i)];
    const auto& r = runs[i];
    if (!g.used) {
      g = {r.row, r.row, r.start, r.end, true};
    } else {
      g.y0 = std::min(g.y0, r.row);
      g.y1 = std::max(g.y1, r.row);
      g.x0 = std::min(g.x0, r.start);
      g.x1 = std::max(g.x1, r.end);
    }
  }

  const double min_len = p.min_len_frac * w;
  std::vector<RulingLine> lines;
  for (const auto& g : groups) {
    if (!g.used) continue;
    const int thickness = g.y1 - g.y0 + 1;
    if (thickness > p.max_thickness) continue;
    if (g.x1 - g.x0 < min_len) continue;
    lines.push_back({Orientation::horizontal, (g.y0 + g.y1) / 2, g.x0, g.x1, thickness});
  }
  std::sort(lines.begin(), lines.end(),
            [](const RulingLine& a, const RulingLine& b) { return std::tie(a.position, a.start) < std::tie(b.position, b.start); });
  return lines;
}

std::vector<int> collapse_positions(std::vector<int> positions, int lo, int hi, int snap_tol) {
  std::sort(positions.begin(), positions.end());
  std::vector<int> out{lo};
  std::size_t i = 0;
  while (i < positions.size()) {
    std::size_t j = i + 1;
    long long sum = positions[i];
    while (j < positions.size() && positions[j] - positions[j - 1] <= snap_tol) sum += positions[j++];
    const auto n = static_cast<long long>(j - i);
    const int mean = static_cast<int>(std::llround(static_cast<double>(sum) / static_cast<double>(n)));
    i = j;
    if (mean - lo <= snap_tol || hi - mean <= snap_tol) continue;  // table edge
    if (mean > out.back()) out.push_back(mean);
  }
  if (hi > out.back()) out.push_back(hi);
  return out;
}

}  // namespace

std::vector<RulingLine> detect_ruling_lines(const BinaryImage& page, const BBox& table,
                                            const LineDetectionParams& params) {
  if (!(params.min_len_frac > 0.0 && params.min_len_frac <= 1.0)) {
    throw std::invalid_argument("min_len_frac must lie in (0, 1]");
  }
  if (!page.bounds().contains(table)) throw std::invalid_argument("table lies outside the page");
  const auto crop = page.crop(table);

  std::vector<RulingLine> out;
  for (auto l : horizontal_lines(crop, params)) {
    l.position += table.y0();
    l.start += table.x0();
    l.end += table.x0();
    out.push_back(l);
  }
  for (auto l : horizontal_lines(transpose(crop), params)) {
    l.orientation = Orientation::vertical;
    l.position += table.x0();
    l.start += table.y0();
    l.end += table.y0();
    out.push_back(l);
  }
  return out;
}

Grid grid_from_lines(std::span<const RulingLine> lines, const BBox& table, int snap_tol) {
  std::vector<int> rows, cols;
  for (const auto& l : lines) {
    (l.orientation == Orientation::horizontal ? rows : cols).push_back(l.position);
  }
  return {collapse_positions(std::move(rows), table.y0(), table.y1(), snap_tol),
          collapse_positions(std::move(cols), table.x0(), table.x1(), snap_tol)};
}

TableStructure bordered_structure(const BinaryImage& page, const BBox& table,
                                  const BorderedParams& params) {
  const auto lines = detect_ruling_lines(page, table, params.lines);
  const auto grid = grid_from_lines(lines, table, params.snap_tol);
  int thickness = 0;
  for (const auto& l : lines) thickness = std::max(thickness, l.thickness);
  const int inset = thickness + 1;

  TableStructure out{table, TableType::bordered, grid.rows(), grid.cols(), {},
                     grid.row_separators, grid.col_separators, {}};
  for (int r = 0; r < grid.rows(); ++r) {
    for (int c = 0; c < grid.cols(); ++c) {
      const BBox cell{grid.col_separators[c], grid.row_separators[r], grid.col_separators[c + 1],
                      grid.row_separators[r + 1]};
      StructureCell sc{r, r + 1, c, c + 1, cell, {}, CellSource::model};
      const int ix0 = cell.x0() + inset, iy0 = cell.y0() + inset;
      const int ix1 = cell.x1() - inset, iy1 = cell.y1() - inset;
      if (ix1 > ix0 && iy1 > iy0) {
        const BBox interior{ix0, iy0, ix1, iy1};
        for (const auto& b : text_regions(page.crop(interior), params.text)) {
          sc.content.push_back(b.translated(ix0, iy0));
        }
      }
      out.cells.push_back(std::move(sc));
    }
  }
  if (lines.empty()) out.diagnostics.push_back("no ruling lines detected; table treated as one cell");
  return out;
}

}  // namespace tabstruct
