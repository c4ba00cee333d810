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

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

namespace tabstruct {
namespace {

using testing::uniform;

struct RuledTable {
  BinaryImage page;
  BBox bbox;
  std::vector<BBox> cells;  // interiors, row-major
};

// Rules of thickness t at ox + c*cw and oy + r*ch.
RuledTable ruled(int rows, int cols, int ox, int oy, int cw, int ch, int t, int page_w = 400, int page_h = 300) {
  RuledTable out{BinaryImage(page_w, page_h), BBox(ox, oy, ox + cols * cw + t, oy + rows * ch + t), {}};
  for (int r = 0; r <= rows; ++r) out.page.fill_rect(BBox(ox, oy + r * ch, ox + cols * cw + t, oy + r * ch + t), true);
  for (int c = 0; c <= cols; ++c) out.page.fill_rect(BBox(ox + c * cw, oy, ox + c * cw + t, oy + rows * ch + t), true);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      out.cells.emplace_back(ox + c * cw + t, oy + r * ch + t, ox + (c + 1) * cw, oy + (r + 1) * ch);
    }
  }
  return out;
}

TEST(RulingLines, BlankCropHasNoLines) {
  const BinaryImage page(100, 80);
  EXPECT_TRUE(detect_ruling_lines(page, BBox(0, 0, 100, 80)).empty());
}

TEST(RulingLines, SingleBar) {
  BinaryImage page(100, 80);
  page.fill_rect(BBox(5, 40, 95, 42), true);
  const auto lines = detect_ruling_lines(page, BBox(0, 0, 100, 80));
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].orientation, Orientation::horizontal);
  EXPECT_NEAR(lines[0].position, 40, 1);
  EXPECT_EQ(lines[0].thickness, 2);
  EXPECT_EQ(lines[0].start, 5);
  EXPECT_EQ(lines[0].end, 95);
}

TEST(RulingLines, ShortAndThickInkIsNotARule) {
  BinaryImage page(100, 80);
  page.fill_rect(BBox(5, 10, 30, 12), true);   // shorter than half the width
  page.fill_rect(BBox(5, 40, 95, 52), true);   // solid block
  EXPECT_TRUE(detect_ruling_lines(page, BBox(0, 0, 100, 80)).empty());
}

TEST(RulingLines, FullyRuledTable) {
  const auto t = ruled(3, 2, 20, 30, 80, 30, 2);
  const auto lines = detect_ruling_lines(t.page, t.bbox);
  int h = 0, v = 0;
  for (const auto& l : lines) (l.orientation == Orientation::horizontal ? h : v) += 1;
  EXPECT_EQ(h, 4);
  EXPECT_EQ(v, 3);
  const auto g = grid_from_lines(lines, t.bbox);
  EXPECT_EQ(g.rows(), 3);
  EXPECT_EQ(g.cols(), 2);
}

TEST(Grid, NearbyLinesCollapse) {
  const BBox table(0, 0, 100, 100);
  const std::vector<RulingLine> lines{{Orientation::horizontal, 40, 0, 100, 1},
                                      {Orientation::horizontal, 42, 0, 100, 1}};
  const auto g = grid_from_lines(lines, table, 5);
  EXPECT_EQ(g.row_separators, (std::vector<int>{0, 41, 100}));
  EXPECT_EQ(g.col_separators, (std::vector<int>{0, 100}));
}

TEST(Grid, NoLinesIsOneSlot) {
  const auto g = grid_from_lines({}, BBox(3, 4, 50, 60));
  EXPECT_EQ(g.row_separators, (std::vector<int>{4, 60}));
  EXPECT_EQ(g.col_separators, (std::vector<int>{3, 50}));
}

TEST(Grid, LinesNearEdgesSnapOntoThem) {
  const BBox table(0, 0, 100, 100);
  const std::vector<RulingLine> lines{{Orientation::vertical, 2, 0, 100, 2},
                                      {Orientation::vertical, 50, 0, 100, 2},
                                      {Orientation::vertical, 97, 0, 100, 2}};
  EXPECT_EQ(grid_from_lines(lines, table).col_separators, (std::vector<int>{0, 50, 100}));
}

TEST(Grid, SeparatorsStrictlyIncrease) {
  std::mt19937_64 rng(21);
  for (int iter = 0; iter < 300; ++iter) {
    const BBox table(0, 0, uniform(rng, 1, 200), uniform(rng, 1, 200));
    std::vector<RulingLine> lines;
    const int n = uniform(rng, 0, 10);
    for (int i = 0; i < n; ++i) {
      const bool hor = uniform(rng, 0, 1);
      lines.push_back({hor ? Orientation::horizontal : Orientation::vertical,
                       uniform(rng, 0, (hor ? table.height() : table.width()) - 1), 0, 1, 1});
    }
    const auto g = grid_from_lines(lines, table, uniform(rng, 0, 8));
    for (const auto* seps : {&g.row_separators, &g.col_separators}) {
      ASSERT_GE(seps->size(), 2u);
      for (std::size_t k = 1; k < seps->size(); ++k) ASSERT_LT((*seps)[k - 1], (*seps)[k]);
    }
    EXPECT_EQ(g.row_separators.front(), table.y0());
    EXPECT_EQ(g.row_separators.back(), table.y1());
    EXPECT_EQ(g.col_separators.front(), table.x0());
    EXPECT_EQ(g.col_separators.back(), table.x1());
  }
}

TEST(BorderedStructure, OneContentBoxPerWordCell) {
  auto t = ruled(4, 3, 10, 10, 90, 32, 2);
  for (std::size_t k = 0; k < t.cells.size(); ++k) {
    if (k == 5) continue;  // left empty
    const auto& c = t.cells[k];
    t.page.fill_rect(BBox(c.x0() + 20, c.y0() + 10, c.x0() + 45, c.y0() + 18), true);
  }
  const auto s = bordered_structure(t.page, t.bbox);
  EXPECT_EQ(s.type, TableType::bordered);
  ASSERT_EQ(s.n_rows, 4);
  ASSERT_EQ(s.n_cols, 3);
  ASSERT_EQ(s.cells.size(), 12u);
  EXPECT_TRUE(spans_valid(s));
  for (std::size_t k = 0; k < s.cells.size(); ++k) {
    const auto& c = s.cells[k];
    EXPECT_EQ(c.r1 - c.r0, 1);
    EXPECT_EQ(c.c1 - c.c0, 1);
    EXPECT_EQ(c.source, CellSource::model);
    const std::size_t idx = static_cast<std::size_t>(c.r0 * 3 + c.c0);
    EXPECT_EQ(c.content.size(), idx == 5 ? 0u : 1u) << "cell " << idx;
    if (idx != 5) {
      const auto& want = t.cells[idx];
      EXPECT_EQ(c.content[0], BBox(want.x0() + 20, want.y0() + 10, want.x0() + 45, want.y0() + 18));
    }
  }
}

TEST(BorderedStructure, TranslationEquivariant) {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 20; ++iter) {
    const int rows = uniform(rng, 1, 4), cols = uniform(rng, 1, 4), t = uniform(rng, 1, 3);
    const int dx = uniform(rng, 0, 40), dy = uniform(rng, 0, 40);
    const auto a = ruled(rows, cols, 5, 5, 60, 30, t);
    const auto b = ruled(rows, cols, 5 + dx, 5 + dy, 60, 30, t);
    const auto sa = bordered_structure(a.page, a.bbox);
    const auto sb = bordered_structure(b.page, b.bbox);
    ASSERT_EQ(sa.n_rows, sb.n_rows);
    ASSERT_EQ(sa.n_cols, sb.n_cols);
    EXPECT_EQ(sa.n_rows, rows);
    EXPECT_EQ(sa.n_cols, cols);
    for (std::size_t k = 0; k < sa.cells.size(); ++k) {
      EXPECT_EQ(sa.cells[k].bbox.translated(dx, dy), sb.cells[k].bbox);
    }
  }
}

TEST(BorderedStructure, CellInkDoesNotChangeLines) {
  std::mt19937_64 rng(25);
  for (int iter = 0; iter < 20; ++iter) {
    auto t = ruled(3, 3, 10, 10, 90, 40, 2);
    const auto before = detect_ruling_lines(t.page, t.bbox);
    for (const auto& c : t.cells) {
      const int n = uniform(rng, 0, 3);
      for (int k = 0; k < n; ++k) {
        const int w = uniform(rng, 4, 30), h = uniform(rng, 4, 10);
        const int x = uniform(rng, c.x0() + 4, c.x1() - 4 - w), y = uniform(rng, c.y0() + 4, c.y1() - 4 - h);
        t.page.fill_rect(BBox(x, y, x + w, y + h), true);
      }
    }
    EXPECT_EQ(detect_ruling_lines(t.page, t.bbox), before);
  }
}

}  // namespace
}  // namespace tabstruct
