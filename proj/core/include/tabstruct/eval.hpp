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
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tabstruct/detections.hpp"
#include "tabstruct/raster.hpp"
#include "tabstruct/structure.hpp"

namespace tabstruct {

inline const std::vector<double> kIcdar19Thresholds = {0.6, 0.7, 0.8, 0.9};

struct Match {
  std::size_t pred;
  std::size_t gt;
  double iou;
};

struct Matching {
  std::vector<Match> matches;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Greedy one-to-one matching over all pairs in descending IoU order (ties by
/// pred index, then gt index). A pair matches when IoU >= threshold and
/// neither side is taken yet.
Matching match_boxes(std::span<const BBox> preds, std::span<const BBox> gts, double threshold);

/// 2PR / (P + R), 0 when P + R == 0.
double f1_score(double precision, double recall);

struct ThresholdScores {
  double iou_threshold = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  static ThresholdScores from_counts(double threshold, std::size_t tp, std::size_t fp, std::size_t fn);
};

/// sum(t * F1(t)) / sum(t). Throws std::invalid_argument when empty.
double weighted_avg_f1(const std::map<double, double>& f1_by_threshold);

/// Table regions of one page, predictions against ground truth.
struct EvalPage {
  std::string image_id;
  std::vector<BBox> preds;
  std::vector<BBox> gts;
};

struct PageMatches {
  std::string image_id;
  std::vector<Matching> per_threshold;  // aligned with Icdar19Report::per_threshold
};

struct Icdar19Report {
  std::vector<ThresholdScores> per_threshold;
  double weighted_avg_f1 = 0.0;
  std::vector<PageMatches> pages;
};

/// Corpus-level P/R/F1 per IoU threshold (counts summed over pages) and the
/// weighted-average F1.
Icdar19Report evaluate_icdar19(std::span<const EvalPage> pages,
                               std::span<const double> thresholds = kIcdar19Thresholds);

struct AreaScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Area metrics summed over the corpus. Per page the overlap is the area of
/// (union of preds) intersected with (union of gts); prediction and
/// ground-truth areas are union areas. Both totals zero gives 1/1/1.
AreaScores tablebank_metrics(std::span<const EvalPage> pages);

/// Per-table completeness (gt area covered by predictions) and purity (pred
/// area covered by ground truth), averaged over all gt / pred tables, at
/// region-area granularity. Throws std::invalid_argument with no gt tables.
AreaScores icdar13_metrics(std::span<const EvalPage> pages);

/// Same grid shape and the same set of cell span rectangles.
bool structure_matches(const TableStructure& predicted, const GtTable& truth);

struct F1Row {
  std::string name;
  std::map<double, double> f1_by_threshold;
};

/// Plain-text table: one column per IoU threshold and a WAvg. column.
std::string format_f1_table(std::span<const F1Row> rows);

}  // namespace tabstruct
