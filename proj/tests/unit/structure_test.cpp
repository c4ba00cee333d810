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

#include "tabstruct/structure.hpp"

#include <gtest/gtest.h>

#include <random>

#include "tabstruct/detections.hpp"
#include "oracles.hpp"

namespace tabstruct {
namespace {

using testing::uniform;

TableStructure grid(int rows, int cols) {
  TableStructure t{BBox(0, 0, 10 * cols, 10 * rows), TableType::borderless, rows, cols, {}, {}, {}, {}};
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      t.cells.push_back({r, r + 1, c, c + 1, BBox(10 * c, 10 * r, 10 * c + 10, 10 * r + 10), {}, CellSource::model});
    }
  }
  return t;
}

TEST(Structure, SpansValid) {
  auto t = grid(2, 3);
  EXPECT_TRUE(spans_valid(t));
  t.cells[0].c1 = 2;  // now overlaps cell (0,1)
  EXPECT_FALSE(spans_valid(t));
  t.cells.erase(t.cells.begin() + 1);
  EXPECT_TRUE(spans_valid(t));
  t.cells[0].r1 = 3;
  EXPECT_FALSE(spans_valid(t));
  EXPECT_TRUE(spans_valid(TableStructure{BBox(0, 0, 1, 1), TableType::bordered, 1, 1, {}, {}, {}, {}}));
  EXPECT_FALSE(spans_valid(TableStructure{BBox(0, 0, 1, 1), TableType::bordered, 0, 1, {}, {}, {}, {}}));
}

TEST(Structure, RoundTrip) {
  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 100; ++iter) {
    PageStructure page{"page" + std::to_string(iter), {}};
    const int n = uniform(rng, 0, 3);
    for (int k = 0; k < n; ++k) {
      auto t = grid(uniform(rng, 1, 4), uniform(rng, 1, 4));
      t.type = uniform(rng, 0, 1) ? TableType::bordered : TableType::borderless;
      for (auto& c : t.cells) {
        if (uniform(rng, 0, 3) == 0) c.source = CellSource::recovered;
        const int words = uniform(rng, 0, 2);
        for (int w = 0; w < words; ++w) c.content.push_back(testing::random_box(rng, 200, 200));
      }
      if (uniform(rng, 0, 2) == 0) t.cells.pop_back();
      page.tables.push_back(std::move(t));
    }
    const auto back = parse_structure(serialize_structure(page));
    ASSERT_EQ(back.image_id, page.image_id);
    ASSERT_EQ(back.tables.size(), page.tables.size());
    for (std::size_t k = 0; k < page.tables.size(); ++k) {
      EXPECT_EQ(back.tables[k].table_bbox, page.tables[k].table_bbox);
      EXPECT_EQ(back.tables[k].type, page.tables[k].type);
      EXPECT_EQ(back.tables[k].n_rows, page.tables[k].n_rows);
      EXPECT_EQ(back.tables[k].cells, page.tables[k].cells);
    }
  }
}

TEST(Structure, RejectsInvalidDocuments) {
  EXPECT_THROW(parse_structure("{"), ParseError);
  EXPECT_THROW(parse_structure(R"({"image_id": "p"})"), ValidationError);
  const std::string overlap = R"({"image_id": "p", "tables": [{"bbox": [0, 0, 10, 10], "type": "borderless",
    "n_rows": 1, "n_cols": 2, "cells": [
      {"row": [0, 1], "col": [0, 2], "bbox": [0, 0, 10, 10], "content": [], "source": "model"},
      {"row": [0, 1], "col": [1, 2], "bbox": [5, 0, 10, 10], "content": [], "source": "model"}]}]})";
  EXPECT_THROW(parse_structure(overlap), ValidationError);
  const std::string empty_box = R"({"image_id": "p", "tables": [{"bbox": [5, 0, 5, 10], "type": "bordered",
    "n_rows": 1, "n_cols": 1, "cells": []}]})";
  EXPECT_THROW(parse_structure(empty_box), ValidationError);
}

}  // namespace
}  // namespace tabstruct
