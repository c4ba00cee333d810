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

#include "tabstruct/borderless.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace tabstruct {

namespace {

struct Interval {
  int start;
  int end;
  std::size_t order;  // reading-order rank, for ties
};

int lo_of(const BBox& b, Axis axis) { return axis == Axis::row ? b.y0() : b.x0(); }
int hi_of(const BBox& b, Axis axis) { return axis == Axis::row ? b.y1() : b.x1(); }

double median_extent(const std::vector<Interval>& xs) {
  std::vector<int> len;
  len.reserve(xs.size());
  for (const auto& x : xs) len.push_back(x.end - x.start);
  std::sort(len.begin(), len.end());
  const auto n = len.size();
  return n % 2 ? len[n / 2] : 0.5 * (len[n / 2 - 1] + len[n / 2]);
}

std::vector<std::vector<int>> empty_grid(std::size_t rows, std::size_t cols) {
  return std::vector<std::vector<int>>(rows, std::vector<int>(cols, -1));
}

}  // namespace

std::vector<Band> cluster_bands(std::span<const BBox> cells, Axis axis, double overlap_frac,
                                double span_factor) {
  if (!(overlap_frac > 0.0 && overlap_frac <= 1.0)) throw std::invalid_argument("overlap_frac must lie in (0, 1]");
  if (cells.empty()) return {};

  std::vector<std::size_t> reading(cells.size());
  std::iota(reading.begin(), reading.end(), std::size_t{0});
  std::stable_sort(reading.begin(), reading.end(),
                   [&](std::size_t a, std::size_t b) { return reading_order_less(cells[a], cells[b]); });
  std::vector<Interval> all(cells.size());
  for (std::size_t rank = 0; rank < reading.size(); ++rank) {
    const auto& b = cells[reading[rank]];
    all[rank] = {lo_of(b, axis), hi_of(b, axis), rank};
  }

  const double limit = span_factor * median_extent(all);
  std::vector<Interval> seeds;
  std::copy_if(all.begin(), all.end(), std::back_inserter(seeds),
               [&](const Interval& x) { return x.end - x.start <= limit; });
  std::sort(seeds.begin(), seeds.end(), [](const Interval& a, const Interval& b) {
    return std::make_tuple(a.start + a.end, a.order) < std::make_tuple(b.start + b.end, b.order);
  });

  std::vector<Band> bands;
  for (const auto& s : seeds) {
    if (!bands.empty()) {
      auto& cur = bands.back();
      const int overlap = std::min(cur.end, s.end) - std::max(cur.start, s.start);
      const int shorter = std::min(cur.end - cur.start, s.end - s.start);
      if (overlap > 0 && overlap >= overlap_frac * shorter) {
        cur.start = std::min(cur.start, s.start);
        cur.end = std::max(cur.end, s.end);
        continue;
      }
    }
    bands.push_back({axis, s.start, s.end, 0});
  }

  // Restore disjointness. A merge can reach back over earlier bands, so the
  // tail is re-checked until it is clean.
  std::vector<Band> out;
  for (const auto& b : bands) {
    out.push_back(b);
    while (out.size() >= 2) {
      auto& prev = out[out.size() - 2];
      auto& cur = out.back();
      if (prev.end <= cur.start) break;
      const int mid = (cur.start + prev.end) / 2;
      if (mid > prev.start && mid < cur.end) {
        prev.end = mid;
        cur.start = mid;
        break;
      }
      prev.start = std::min(prev.start, cur.start);
      prev.end = std::max(prev.end, cur.end);
      out.pop_back();
    }
  }
  for (std::size_t i = 0; i < out.size(); ++i) out[i].index = static_cast<int>(i);
  return out;
}

std::vector<int> estimate_separators(std::span<const Band> bands, const BBox& table, Axis axis) {
  const int lo = lo_of(table, axis);
  const int hi = hi_of(table, axis);
  std::vector<int> seps{lo};
  for (std::size_t i = 0; i + 1 < bands.size(); ++i) {
    const int sum = bands[i].end + bands[i + 1].start;
    const int mid = sum >= 0 ? sum / 2 : -((-sum + 1) / 2);
    if (mid > seps.back() && mid < hi) seps.push_back(mid);
  }
  seps.push_back(hi);
  return seps;
}

SlotSpan span_on_axis(int start, int end, std::span<const int> seps, int margin) {
  const int n_slots = static_cast<int>(seps.size()) - 1;
  if (n_slots < 1) throw std::invalid_argument("need at least two separators");
  bool clamped = false;

  // last separator <= start + margin
  const auto up = std::upper_bound(seps.begin(), seps.end(), start + margin);
  int lo = static_cast<int>(up - seps.begin()) - 1;
  if (lo < 0) {
    lo = 0;
    clamped = true;
  }
  // first separator >= end - margin
  const auto down = std::lower_bound(seps.begin(), seps.end(), end - margin);
  int hi = static_cast<int>(down - seps.begin());
  if (hi > n_slots) {
    hi = n_slots;
    clamped = true;
  }
  if (lo > n_slots - 1) {
    lo = n_slots - 1;
    clamped = true;
  }
  if (hi <= lo) {
    hi = lo + 1;
    clamped = true;
  }
  return {lo, hi, clamped};
}

std::vector<RecoveredCell> recover_missing_cells(const BinaryImage& page, const BBox& table,
                                                 std::span<const int> row_seps,
                                                 std::span<const int> col_seps,
                                                 std::span<const BBox> model_cells,
                                                 const RecoveryParams& params) {
  (void)table;
  const auto n_rows = row_seps.size() - 1, n_cols = col_seps.size() - 1;
  auto covered = empty_grid(n_rows, n_cols);
  for (const auto& cell : model_cells) {
    const auto rs = span_on_axis(cell.y0(), cell.y1(), row_seps, params.margin);
    const auto cs = span_on_axis(cell.x0(), cell.x1(), col_seps, params.margin);
    for (int r = rs.lo; r < rs.hi; ++r) {
      for (int c = cs.lo; c < cs.hi; ++c) covered[r][c] = 1;
    }
  }

  std::vector<RecoveredCell> out;
  const auto bounds = page.bounds();
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (covered[r][c] >= 0) continue;
      const int x0 = std::max(col_seps[c] + params.inset, bounds.x0());
      const int y0 = std::max(row_seps[r] + params.inset, bounds.y0());
      const int x1 = std::min(col_seps[c + 1] - params.inset, bounds.x1());
      const int y1 = std::min(row_seps[r + 1] - params.inset, bounds.y1());
      if (x1 <= x0 || y1 <= y0) continue;
      std::vector<BBox> found;
      for (const auto& b : text_regions(page.crop({x0, y0, x1, y1}), params.text)) {
        found.push_back(b.translated(x0, y0));
      }
      if (found.empty()) continue;
      out.push_back({static_cast<int>(r), static_cast<int>(c), *bounding_union(found), std::move(found)});
    }
  }
  return out;
}

SpanAssignment assign_spans(std::span<const CellCandidate> cells, std::span<const int> row_seps,
                            std::span<const int> col_seps, int margin) {
  for (auto seps : {row_seps, col_seps}) {
    if (seps.size() < 2 || !std::is_sorted(seps.begin(), seps.end()) ||
        std::adjacent_find(seps.begin(), seps.end()) != seps.end()) {
      throw std::invalid_argument("separators must be strictly increasing with at least two entries");
    }
  }
  SpanAssignment out;

  std::vector<std::size_t> order(cells.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const auto& ca = cells[a];
    const auto& cb = cells[b];
    if (ca.source != cb.source) return ca.source == CellSource::model;
    if (ca.bbox.area() != cb.bbox.area()) return ca.bbox.area() > cb.bbox.area();
    return reading_order_less(ca.bbox, cb.bbox);
  });

  const auto n_rows = row_seps.size() - 1, n_cols = col_seps.size() - 1;
  auto owner = empty_grid(n_rows, n_cols);
  auto free_rect = [&](int r0, int r1, int c0, int c1) {
    for (int r = r0; r < r1; ++r) {
      for (int c = c0; c < c1; ++c) {
        if (owner[r][c] >= 0) return false;
      }
    }
    return true;
  };
  auto slot_of = [](int center2, std::span<const int> seps) {
    int i = 0;
    while (i + 2 < static_cast<int>(seps.size()) && 2 * seps[i + 1] <= center2) ++i;
    return i;
  };

  for (const auto idx : order) {
    const auto& cand = cells[idx];
    const auto rs = span_on_axis(cand.bbox.y0(), cand.bbox.y1(), row_seps, margin);
    const auto cs = span_on_axis(cand.bbox.x0(), cand.bbox.x1(), col_seps, margin);
    int r0 = rs.lo, r1 = rs.hi, c0 = cs.lo, c1 = cs.hi;
    if (rs.clamped || cs.clamped) {
      out.diagnostics.push_back("cell at [" + std::to_string(cand.bbox.x0()) + "," +
                                std::to_string(cand.bbox.y0()) + "] clamped into the grid");
    }
    if (!free_rect(r0, r1, c0, c1)) {
      r0 = slot_of(cand.bbox.center2_y(), row_seps);
      c0 = slot_of(cand.bbox.center2_x(), col_seps);
      r1 = r0 + 1;
      c1 = c0 + 1;
      if (!free_rect(r0, r1, c0, c1)) {
        out.diagnostics.push_back("cell at [" + std::to_string(cand.bbox.x0()) + "," +
                                  std::to_string(cand.bbox.y0()) + "] dropped: slot already taken");
        continue;
      }
      out.diagnostics.push_back("cell at [" + std::to_string(cand.bbox.x0()) + "," +
                                std::to_string(cand.bbox.y0()) + "] shrunk to its center slot");
    }
    for (int r = r0; r < r1; ++r) {
      for (int c = c0; c < c1; ++c) owner[r][c] = static_cast<int>(idx);
    }
    out.cells.push_back({r0, r1, c0, c1, cand.bbox, cand.content, cand.source});
  }

  std::sort(out.cells.begin(), out.cells.end(), [](const StructureCell& a, const StructureCell& b) {
    return std::tie(a.r0, a.c0) < std::tie(b.r0, b.c0);
  });
  return out;
}

TableStructure borderless_structure(const BinaryImage& page, const BBox& table,
                                    std::span<const BBox> model_cells, const BorderlessParams& params) {
  const auto row_bands = cluster_bands(model_cells, Axis::row, params.overlap_frac, params.span_factor);
  const auto col_bands = cluster_bands(model_cells, Axis::column, params.overlap_frac, params.span_factor);
  auto row_seps = estimate_separators(row_bands, table, Axis::row);
  auto col_seps = estimate_separators(col_bands, table, Axis::column);

  const RecoveryParams rp{params.recovery_inset, params.margin, params.text};
  auto recovered = recover_missing_cells(page, table, row_seps, col_seps, model_cells, rp);

  std::vector<CellCandidate> candidates;
  const auto bounds = page.bounds();
  for (const auto& m : model_cells) {
    CellCandidate c{m, CellSource::model, {}};
    if (auto clip = m.intersected(bounds)) {
      for (const auto& b : text_regions(page.crop(*clip), params.text)) {
        c.content.push_back(b.translated(clip->x0(), clip->y0()));
      }
    }
    candidates.push_back(std::move(c));
  }
  for (auto& r : recovered) candidates.push_back({r.bbox, CellSource::recovered, std::move(r.content)});

  auto spans = assign_spans(candidates, row_seps, col_seps, params.margin);
  TableStructure out{table,
                     TableType::borderless,
                     static_cast<int>(row_seps.size()) - 1,
                     static_cast<int>(col_seps.size()) - 1,
                     std::move(spans.cells),
                     std::move(row_seps),
                     std::move(col_seps),
                     std::move(spans.diagnostics)};
  if (model_cells.empty() && out.cells.empty()) {
    out.diagnostics.push_back("no model cells and no detectable text; table left empty");
  }
  return out;
}

}  // namespace tabstruct
