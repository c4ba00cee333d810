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

#include "tabstruct/pipeline.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "tabstruct/synthgen.hpp"

namespace tabstruct {
namespace {

TEST(Pipeline, NoTablesGivesEmptyStructure) {
  const PageDetections det{"p", 50, 40, {}};
  const auto s = recognize_page(GrayImage(50, 40), det);
  EXPECT_EQ(s.image_id, "p");
  EXPECT_TRUE(s.tables.empty());
}

TEST(Pipeline, SizeMismatchThrows) {
  const PageDetections det{"p", 50, 40, {}};
  EXPECT_THROW(recognize_page(GrayImage(40, 50), det), std::invalid_argument);
}

TEST(Pipeline, RoutesByClassAndOrdersTables) {
  SynthSpec spec;
  spec.tables_per_page = {3, 3};
  spec.seed = 8;
  const auto doc = generate_page(spec, 0);
  auto det = doc.perfect_detections;
  // Reverse the instance order; output must still be top-to-bottom.
  std::reverse(det.instances.begin(), det.instances.end());
  const auto s = recognize_page(doc.image, det);
  ASSERT_EQ(s.tables.size(), doc.gt.tables.size());
  for (std::size_t k = 0; k < s.tables.size(); ++k) {
    if (k) EXPECT_LT(s.tables[k - 1].table_bbox.y0(), s.tables[k].table_bbox.y0());
    const auto& gt = doc.gt.tables[k];
    EXPECT_EQ(s.tables[k].type,
              gt.cls == DetectionClass::bordered_table ? TableType::bordered : TableType::borderless);
    EXPECT_TRUE(spans_valid(s.tables[k]));
  }
}

TEST(Pipeline, LowScoresAreFilteredOut) {
  SynthSpec spec;
  spec.tables_per_page = {1, 1};
  const auto doc = generate_page(spec, 0);
  auto det = doc.perfect_detections;
  for (auto& d : det.instances) d.score = 0.4;
  EXPECT_TRUE(recognize_page(doc.image, det).tables.empty());
  PipelineConfig lenient;
  lenient.score_threshold = 0.3;
  EXPECT_EQ(recognize_page(doc.image, det, lenient).tables.size(), 1u);
}

}  // namespace
}  // namespace tabstruct
