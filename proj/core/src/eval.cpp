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

#include "tabstruct/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

namespace tabstruct {

Matching match_boxes(std::span<const BBox> preds, std::span<const BBox> gts, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw std::invalid_argument("IoU threshold must lie in (0, 1]");
  std::vector<Match> pairs;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    for (std::size_t g = 0; g < gts.size(); ++g) {
      const double v = iou(preds[p], gts[g]);
      if (v >= threshold) pairs.push_back({p, g, v});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Match& a, const Match& b) {
    if (a.iou != b.iou) return a.iou > b.iou;
    return std::tie(a.pred, a.gt) < std::tie(b.pred, b.gt);
  });

  Matching out;
  std::vector<char> pred_used(preds.size(), 0), gt_used(gts.size(), 0);
  for (const auto& m : pairs) {
    if (pred_used[m.pred] || gt_used[m.gt]) continue;
    pred_used[m.pred] = gt_used[m.gt] = 1;
    out.matches.push_back(m);
  }
  out.tp = out.matches.size();
  out.fp = preds.size() - out.tp;
  out.fn = gts.size() - out.tp;
  return out;
}

double f1_score(double precision, double recall) {
  const double s = precision + recall;
  return s > 0.0 ? 2.0 * precision * recall / s : 0.0;
}

ThresholdScores ThresholdScores::from_counts(double threshold, std::size_t tp, std::size_t fp, std::size_t fn) {
  ThresholdScores s{threshold, tp, fp, fn, 0.0, 0.0, 0.0};
  if (tp + fp > 0) s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
  if (tp + fn > 0) s.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

double weighted_avg_f1(const std::map<double, double>& f1_by_threshold) {
  if (f1_by_threshold.empty()) throw std::invalid_argument("weighted_avg_f1 needs at least one threshold");
  double num = 0.0, den = 0.0;
  for (const auto& [t, f1] : f1_by_threshold) {
    num += t * f1;
    den += t;
  }
  if (den <= 0.0) throw std::invalid_argument("threshold weights must sum to a positive value");
  return num / den;
}

Icdar19Report evaluate_icdar19(std::span<const EvalPage> pages, std::span<const double> thresholds) {
  if (thresholds.empty()) throw std::invalid_argument("at least one IoU threshold is required");
  Icdar19Report report;
  std::vector<std::size_t> tp(thresholds.size()), fp(thresholds.size()), fn(thresholds.size());
  for (const auto& page : pages) {
    PageMatches pm{page.image_id, {}};
    for (std::size_t k = 0; k < thresholds.size(); ++k) {
      auto m = match_boxes(page.preds, page.gts, thresholds[k]);
      tp[k] += m.tp;
      fp[k] += m.fp;
      fn[k] += m.fn;
      pm.per_threshold.push_back(std::move(m));
    }
    report.pages.push_back(std::move(pm));
  }
  std::map<double, double> f1s;
  for (std::size_t k = 0; k < thresholds.size(); ++k) {
    report.per_threshold.push_back(ThresholdScores::from_counts(thresholds[k], tp[k], fp[k], fn[k]));
    f1s[thresholds[k]] = report.per_threshold.back().f1;
  }
  report.weighted_avg_f1 = weighted_avg_f1(f1s);
  return report;
}

AreaScores tablebank_metrics(std::span<const EvalPage> pages) {
  std::int64_t overlap = 0, pred_area = 0, gt_area = 0;
  for (const auto& p : pages) {
    overlap += union_intersection_area(p.preds, p.gts);
    pred_area += union_area(p.preds);
    gt_area += union_area(p.gts);
  }
  if (pred_area == 0 && gt_area == 0) return {1.0, 1.0, 1.0};
  if (pred_area == 0 || gt_area == 0) return {0.0, 0.0, 0.0};
  AreaScores s;
  s.precision = static_cast<double>(overlap) / static_cast<double>(pred_area);
  s.recall = static_cast<double>(overlap) / static_cast<double>(gt_area);
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

AreaScores icdar13_metrics(std::span<const EvalPage> pages) {
  double recall_sum = 0.0, precision_sum = 0.0;
  std::size_t n_gt = 0, n_pred = 0;
  for (const auto& p : pages) {
    for (const auto& g : p.gts) {
      recall_sum += static_cast<double>(union_intersection_area(std::span(&g, 1), p.preds)) /
                    static_cast<double>(g.area());
      ++n_gt;
    }
    for (const auto& pr : p.preds) {
      precision_sum += static_cast<double>(union_intersection_area(std::span(&pr, 1), p.gts)) /
                       static_cast<double>(pr.area());
      ++n_pred;
    }
  }
  if (n_gt == 0) throw std::invalid_argument("icdar13 metrics are undefined without ground-truth tables");
  AreaScores s;
  s.recall = recall_sum / static_cast<double>(n_gt);
  s.precision = n_pred ? precision_sum / static_cast<double>(n_pred) : 0.0;
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

bool structure_matches(const TableStructure& predicted, const GtTable& truth) {
  if (!truth.cells) return false;
  if (predicted.n_rows != truth.n_rows() || predicted.n_cols != truth.n_cols()) return false;
  std::set<std::tuple<int, int, int, int>> a, b;
  for (const auto& c : predicted.cells) a.emplace(c.r0, c.r1, c.c0, c.c1);
  for (const auto& c : *truth.cells) b.emplace(c.r0, c.r1, c.c0, c.c1);
  return a.size() == predicted.cells.size() && a == b;
}

std::string format_f1_table(std::span<const F1Row> rows) {
  std::set<double> thresholds;
  std::size_t name_width = 7;
  for (const auto& r : rows) {
    for (const auto& [t, _] : r.f1_by_threshold) thresholds.insert(t);
    name_width = std::max(name_width, r.name.size());
  }
  char buf[64];
  std::string out = "Dataset" + std::string(name_width - 7, ' ');
  for (double t : thresholds) {
    std::snprintf(buf, sizeof buf, "  %5.2f", t);
    out += buf;
  }
  out += "  WAvg.\n";
  for (const auto& r : rows) {
    out += r.name + std::string(name_width - r.name.size(), ' ');
    for (double t : thresholds) {
      auto it = r.f1_by_threshold.find(t);
      if (it == r.f1_by_threshold.end()) {
        out += "      -";
      } else {
        std::snprintf(buf, sizeof buf, "  %5.3f", it->second);
        out += buf;
      }
    }
    std::snprintf(buf, sizeof buf, "  %5.3f\n", weighted_avg_f1(r.f1_by_threshold));
    out += buf;
  }
  return out;
}

}  // namespace tabstruct
