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

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tabstruct {

PageStructure recognize_page(const BinaryImage& ink, const PageDetections& detections,
                             const PipelineConfig& config) {
  if (ink.width() != detections.width || ink.height() != detections.height) {
    throw std::invalid_argument("image size " + std::to_string(ink.width()) + "x" + std::to_string(ink.height()) +
                                " does not match detections for '" + detections.image_id + "'");
  }
  const auto assignment = assign_cells(filter_by_score(detections, config.score_threshold));

  std::vector<const TableGroup*> order;
  for (const auto& g : assignment.tables) order.push_back(&g);
  std::stable_sort(order.begin(), order.end(), [](const TableGroup* a, const TableGroup* b) {
    const auto& ba = a->table.bbox;
    const auto& bb = b->table.bbox;
    return std::pair(ba.y0(), ba.x0()) < std::pair(bb.y0(), bb.x0());
  });

  PageStructure out{detections.image_id, {}};
  for (const auto* g : order) {
    if (g->table.cls == DetectionClass::bordered_table) {
      out.tables.push_back(bordered_structure(ink, g->table.bbox, config.bordered_params()));
    } else {
      std::vector<BBox> cells;
      for (const auto& c : g->cells) cells.push_back(c.region());
      out.tables.push_back(borderless_structure(ink, g->table.bbox, cells, config.borderless_params()));
    }
  }
  return out;
}

PageStructure recognize_page(const GrayImage& page, const PageDetections& detections,
                             const PipelineConfig& config) {
  return recognize_page(binarize(page, BinarizeMethod::otsu()), detections, config);
}

}  // namespace tabstruct
