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

#include "tabstruct/synthgen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <set>
#include <utility>

#include <nlohmann/json.hpp>

#include "tabstruct/hashing.hpp"
#include "tabstruct/image_io.hpp"
#include "tabstruct/parallel.hpp"

namespace tabstruct {

namespace {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

constexpr int kBlobMinWidth = 8;
constexpr int kBlobMaxWidth = 30;
constexpr int kBlobMinHeight = 6;
constexpr int kBlobMaxHeight = 10;
constexpr int kBlobGapMin = 3;
constexpr int kBlobGapMax = 6;
constexpr int kMaxBlobs = 3;
constexpr int kSpanAttempts = 8;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Xorshift64Star::Xorshift64Star(std::uint64_t seed) : state_(splitmix64(seed)) {
  if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t Xorshift64Star::next() {
  state_ ^= state_ >> 12;
  state_ ^= state_ << 25;
  state_ ^= state_ >> 27;
  return state_ * 0x2545F4914F6CDD1DULL;
}

int Xorshift64Star::uniform_int(int lo, int hi) {
  if (hi < lo) throw std::invalid_argument("uniform_int: empty range");
  const auto range = static_cast<std::uint64_t>(static_cast<std::int64_t>(hi) - lo) + 1;
  return static_cast<int>(lo + static_cast<std::int64_t>(next() % range));
}

double Xorshift64Star::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

std::string_view to_string(SynthTableType type) {
  switch (type) {
    case SynthTableType::bordered:
      return "bordered";
    case SynthTableType::borderless:
      return "borderless";
    case SynthTableType::semi_bordered:
      return "semi_bordered";
  }
  return "?";
}

namespace {

SynthTableType parse_table_type(std::string_view name) {
  if (name == "bordered") return SynthTableType::bordered;
  if (name == "borderless") return SynthTableType::borderless;
  if (name == "semi_bordered") return SynthTableType::semi_bordered;
  throw SpecError("unknown table type: " + std::string(name));
}

// Widest a column can get: base plus up to 10%.
int max_extent(const IntRange& r) { return r.max + r.max / 10; }

}  // namespace

void SynthSpec::validate() const {
  auto require = [](bool ok, const std::string& msg) {
    if (!ok) throw SpecError(msg);
  };
  auto range = [&](const IntRange& r, int lo, const char* name) {
    require(r.min >= lo && r.min <= r.max,
            std::string(name) + " must satisfy " + std::to_string(lo) + " <= min <= max");
  };
  require(page_width >= 1 && page_height >= 1, "page size must be positive");
  range(tables_per_page, 0, "tables_per_page");
  range(rows, 1, "rows");
  range(cols, 1, "cols");
  range(line_thickness, 1, "line_thickness");
  range(col_width, 1, "col_width");
  range(row_height, 1, "row_height");
  require(!types.empty(), "types must not be empty");
  require(span_prob >= 0.0 && span_prob <= 1.0, "span_prob must lie in [0, 1]");
  require(empty_cell_prob >= 0.0 && empty_cell_prob <= 1.0, "empty_cell_prob must lie in [0, 1]");
  require(jitter >= 0, "jitter must be non-negative");
  require(cell_padding >= 2, "cell_padding must be at least 2");
  require(gutter >= 0 && page_margin >= 0 && table_spacing >= 0,
          "gutter, page_margin and table_spacing must be non-negative");

  const int inner_w = col_width.min - line_thickness.max - 2 * gutter - 2 * cell_padding;
  const int inner_h = row_height.min - line_thickness.max - 2 * gutter - 2 * cell_padding;
  require(inner_w >= kBlobMinWidth && inner_h >= kBlobMinHeight,
          "cells too small for the minimum word blob plus padding");

  const std::int64_t widest = std::int64_t{cols.max} * max_extent(col_width) + line_thickness.max;
  require(widest + 2 * page_margin <= page_width, "widest table does not fit the page width");
  if (tables_per_page.max > 0) {
    const std::int64_t tallest = std::int64_t{rows.max} * max_extent(row_height) + line_thickness.max;
    const std::int64_t stack =
        tables_per_page.max * tallest + std::int64_t{tables_per_page.max - 1} * table_spacing;
    require(stack + 2 * page_margin <= page_height, "stacked tables do not fit the page height");
  }
}

namespace {

ojson range_json(const IntRange& r) { return ojson::array({r.min, r.max}); }

ojson spec_json(const SynthSpec& s) {
  ojson j;
  j["seed"] = s.seed;
  j["page_width"] = s.page_width;
  j["page_height"] = s.page_height;
  j["tables_per_page"] = range_json(s.tables_per_page);
  j["rows"] = range_json(s.rows);
  j["cols"] = range_json(s.cols);
  auto types = ojson::array();
  for (auto t : s.types) types.push_back(std::string(to_string(t)));
  j["types"] = std::move(types);
  j["span_prob"] = s.span_prob;
  j["empty_cell_prob"] = s.empty_cell_prob;
  j["line_thickness"] = range_json(s.line_thickness);
  j["jitter"] = s.jitter;
  j["col_width"] = range_json(s.col_width);
  j["row_height"] = range_json(s.row_height);
  j["cell_padding"] = s.cell_padding;
  j["gutter"] = s.gutter;
  j["page_margin"] = s.page_margin;
  j["table_spacing"] = s.table_spacing;
  return j;
}

int int_field(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw SpecError(key + " must be an integer");
  const auto x = v.get<std::int64_t>();
  if (x < -(1LL << 30) || x > (1LL << 30)) throw SpecError(key + " out of range");
  return static_cast<int>(x);
}

double prob_field(const json& v, const std::string& key) {
  if (!v.is_number()) throw SpecError(key + " must be a number");
  return v.get<double>();
}

IntRange range_field(const json& v, const std::string& key) {
  if (!v.is_array() || v.size() != 2) throw SpecError(key + " must be a [min, max] pair");
  return {int_field(v[0], key), int_field(v[1], key)};
}

}  // namespace

SynthSpec SynthSpec::from_json(std::string_view document) {
  json root;
  try {
    root = json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw SpecError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SpecError("spec must be a JSON object");
  SynthSpec s;
  for (const auto& [key, v] : root.items()) {
    if (key == "seed") {
      if (!v.is_number_unsigned()) throw SpecError("seed must be a non-negative integer");
      s.seed = v.get<std::uint64_t>();
    } else if (key == "page_width") {
      s.page_width = int_field(v, key);
    } else if (key == "page_height") {
      s.page_height = int_field(v, key);
    } else if (key == "tables_per_page") {
      s.tables_per_page = range_field(v, key);
    } else if (key == "rows") {
      s.rows = range_field(v, key);
    } else if (key == "cols") {
      s.cols = range_field(v, key);
    } else if (key == "types") {
      if (!v.is_array()) throw SpecError("types must be an array");
      s.types.clear();
      for (const auto& t : v) {
        if (!t.is_string()) throw SpecError("types must hold strings");
        s.types.push_back(parse_table_type(t.get<std::string>()));
      }
    } else if (key == "span_prob") {
      s.span_prob = prob_field(v, key);
    } else if (key == "empty_cell_prob") {
      s.empty_cell_prob = prob_field(v, key);
    } else if (key == "line_thickness") {
      s.line_thickness = range_field(v, key);
    } else if (key == "jitter") {
      s.jitter = int_field(v, key);
    } else if (key == "col_width") {
      s.col_width = range_field(v, key);
    } else if (key == "row_height") {
      s.row_height = range_field(v, key);
    } else if (key == "cell_padding") {
      s.cell_padding = int_field(v, key);
    } else if (key == "gutter") {
      s.gutter = int_field(v, key);
    } else if (key == "page_margin") {
      s.page_margin = int_field(v, key);
    } else if (key == "table_spacing") {
      s.table_spacing = int_field(v, key);
    } else {
      throw SpecError("unknown spec key: " + key);
    }
  }
  return s;
}

std::string SynthSpec::to_json() const { return spec_json(*this).dump(2); }

namespace {

struct CellPlan {
  int r0, r1, c0, c1;
  bool empty;
};

struct TablePlan {
  SynthTableType type;
  int rows, cols, thickness;
  std::vector<int> col_widths;
  std::vector<int> row_heights;
  std::vector<CellPlan> cells;

  int width() const { return std::accumulate(col_widths.begin(), col_widths.end(), 0) + thickness; }
  int height() const { return std::accumulate(row_heights.begin(), row_heights.end(), 0) + thickness; }
};

std::vector<int> extents(int n, const IntRange& base_range, Xorshift64Star& rng) {
  const int base = rng.uniform_int(base_range.min, base_range.max);
  std::vector<int> out(n);
  for (auto& e : out) e = base + rng.uniform_int(0, base / 10);
  return out;
}

// Every row and every column keeps a cell of extent one on that axis, and
// such cells are a strict majority per axis, so the median cell extent is a
// single-slot extent and bands are seeded from unspanned cells.
bool has_unit_cells(const std::vector<CellPlan>& cells, int rows, int cols) {
  std::vector<bool> row_ok(rows, false), col_ok(cols, false);
  std::size_t unit_rows = 0, unit_cols = 0;
  for (const auto& c : cells) {
    if (c.r1 - c.r0 == 1) {
      row_ok[c.r0] = true;
      ++unit_rows;
    }
    if (c.c1 - c.c0 == 1) {
      col_ok[c.c0] = true;
      ++unit_cols;
    }
  }
  return std::all_of(row_ok.begin(), row_ok.end(), [](bool b) { return b; }) &&
         std::all_of(col_ok.begin(), col_ok.end(), [](bool b) { return b; }) &&
         2 * unit_rows > cells.size() && 2 * unit_cols > cells.size();
}

std::vector<CellPlan> layout_cells(int rows, int cols, double span_prob, Xorshift64Star& rng) {
  if (span_prob > 0.0) {
    for (int attempt = 0; attempt < kSpanAttempts; ++attempt) {
      std::vector<std::vector<bool>> taken(rows, std::vector<bool>(cols, false));
      std::vector<CellPlan> cells;
      for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
          if (taken[r][c]) continue;
          CellPlan cell{r, r + 1, c, c + 1, false};
          if (rng.bernoulli(span_prob)) {
            const bool right_first = rng.uniform_int(0, 1) == 0;
            const bool can_right = c + 1 < cols && !taken[r][c + 1];
            const bool can_down = r + 1 < rows && !taken[r + 1][c];
            if (can_right && (right_first || !can_down)) {
              cell.c1 = c + 2;
            } else if (can_down) {
              cell.r1 = r + 2;
            }
          }
          for (int rr = cell.r0; rr < cell.r1; ++rr) {
            for (int cc = cell.c0; cc < cell.c1; ++cc) taken[rr][cc] = true;
          }
          cells.push_back(cell);
        }
      }
      if (has_unit_cells(cells, rows, cols)) return cells;
    }
  }
  std::vector<CellPlan> cells;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) cells.push_back({r, r + 1, c, c + 1, false});
  }
  return cells;
}

TablePlan plan_table(const SynthSpec& spec, Xorshift64Star& rng) {
  TablePlan t;
  t.type = spec.types[rng.uniform_int(0, static_cast<int>(spec.types.size()) - 1)];
  t.rows = rng.uniform_int(spec.rows.min, spec.rows.max);
  t.cols = rng.uniform_int(spec.cols.min, spec.cols.max);
  t.thickness = rng.uniform_int(spec.line_thickness.min, spec.line_thickness.max);
  t.col_widths = extents(t.cols, spec.col_width, rng);
  t.row_heights = extents(t.rows, spec.row_height, rng);
  // Ruled grids carry no spans: the bordered branch does not infer merges.
  const double span_prob = t.type == SynthTableType::bordered ? 0.0 : spec.span_prob;
  t.cells = layout_cells(t.rows, t.cols, span_prob, rng);
  for (auto& c : t.cells) c.empty = rng.bernoulli(spec.empty_cell_prob);
  return t;
}

std::vector<int> prefix_positions(int origin, const std::vector<int>& extents) {
  std::vector<int> out{origin};
  for (int e : extents) out.push_back(out.back() + e);
  return out;
}

// Blobs laid out left to right on one line, gaps small enough that they
// merge into a single text region.
std::vector<BBox> place_blobs(const BBox& cell_box, int pad, Xorshift64Star& rng) {
  const int avail_w = cell_box.width() - 2 * pad;
  const int avail_h = cell_box.height() - 2 * pad;
  const int count = rng.uniform_int(1, kMaxBlobs);
  const int bh = rng.uniform_int(kBlobMinHeight, std::min(kBlobMaxHeight, avail_h));
  std::vector<int> widths, gaps;
  int total = 0;
  for (int i = 0; i < count; ++i) {
    const int bw = rng.uniform_int(kBlobMinWidth, kBlobMaxWidth);
    const int gap = i == 0 ? 0 : rng.uniform_int(kBlobGapMin, kBlobGapMax);
    if (i == 0) {
      widths.push_back(std::min(bw, avail_w));
      total = widths.back();
    } else if (total + gap + bw <= avail_w) {
      widths.push_back(bw);
      gaps.push_back(gap);
      total += gap + bw;
    }
  }
  int x = cell_box.x0() + pad + rng.uniform_int(0, avail_w - total);
  const int y = cell_box.y0() + pad + rng.uniform_int(0, avail_h - bh);
  std::vector<BBox> blobs;
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (i > 0) x += gaps[i - 1];
    blobs.emplace_back(x, y, x + widths[i], y + bh);
    x += widths[i];
  }
  return blobs;
}

BBox jitter_box(const BBox& b, int jitter, int page_w, int page_h, Xorshift64Star& rng) {
  if (jitter == 0) return b;
  const int x0 = std::clamp(b.x0() + rng.uniform_int(-jitter, jitter), 0, page_w);
  const int y0 = std::clamp(b.y0() + rng.uniform_int(-jitter, jitter), 0, page_h);
  const int x1 = std::clamp(b.x1() + rng.uniform_int(-jitter, jitter), 0, page_w);
  const int y1 = std::clamp(b.y1() + rng.uniform_int(-jitter, jitter), 0, page_h);
  if (x1 <= x0 || y1 <= y0) return b;
  return {x0, y0, x1, y1};
}

bool inside_span(const CellPlan& c, int r_boundary, int col) {
  return c.r0 < r_boundary && r_boundary < c.r1 && c.c0 <= col && col < c.c1;
}

bool inside_span_v(const CellPlan& c, int c_boundary, int row) {
  return c.c0 < c_boundary && c_boundary < c.c1 && c.r0 <= row && row < c.r1;
}

void draw_rules(GrayImage& img, const TablePlan& plan, const std::vector<int>& xs, const std::vector<int>& ys,
                Xorshift64Star& rng) {
  const int t = plan.thickness;
  // Interior boundaries are numbered horizontals 1..rows-1, then verticals
  // 1..cols-1; semi-bordered tables lose a seeded 20-60% of them.
  const int n_h = plan.rows - 1, n_v = plan.cols - 1;
  std::vector<bool> removed(static_cast<std::size_t>(n_h + n_v), false);
  if (plan.type == SynthTableType::semi_bordered && n_h + n_v > 0) {
    const double frac = 0.2 + 0.4 * rng.uniform01();
    const int n_remove = std::max(1, static_cast<int>(std::llround(frac * (n_h + n_v))));
    std::vector<int> order(static_cast<std::size_t>(n_h + n_v));
    std::iota(order.begin(), order.end(), 0);
    for (int i = 0; i < n_remove; ++i) {
      std::swap(order[i], order[rng.uniform_int(i, n_h + n_v - 1)]);
      removed[order[i]] = true;
    }
  }
  for (int r = 0; r <= plan.rows; ++r) {
    const bool interior = r > 0 && r < plan.rows;
    if (interior && removed[r - 1]) continue;
    for (int c = 0; c < plan.cols; ++c) {
      const bool blocked =
          interior && std::any_of(plan.cells.begin(), plan.cells.end(),
                                  [&](const CellPlan& cell) { return inside_span(cell, r, c); });
      if (!blocked) img.fill_rect({xs[c], ys[r], xs[c + 1] + t, ys[r] + t}, 0);
    }
  }
  for (int c = 0; c <= plan.cols; ++c) {
    const bool interior = c > 0 && c < plan.cols;
    if (interior && removed[n_h + c - 1]) continue;
    for (int r = 0; r < plan.rows; ++r) {
      const bool blocked =
          interior && std::any_of(plan.cells.begin(), plan.cells.end(),
                                  [&](const CellPlan& cell) { return inside_span_v(cell, c, r); });
      if (!blocked) img.fill_rect({xs[c], ys[r], xs[c] + t, ys[r + 1] + t}, 0);
    }
  }
}

std::string page_id(int index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 4) digits.insert(0, 4 - digits.size(), '0');
  return "page_" + digits;
}

}  // namespace

SynthDocument generate_page(const SynthSpec& spec, int page_index, const WordRenderer& render) {
  spec.validate();
  if (page_index < 0) throw std::invalid_argument("page index must be non-negative");
  Xorshift64Star rng(spec.seed + static_cast<std::uint64_t>(page_index));

  const int n_tables = rng.uniform_int(spec.tables_per_page.min, spec.tables_per_page.max);
  std::vector<TablePlan> plans;
  for (int i = 0; i < n_tables; ++i) plans.push_back(plan_table(spec, rng));

  // Tables are stacked top to bottom; validate() guarantees the fit.
  int stack = n_tables > 0 ? (n_tables - 1) * spec.table_spacing : 0;
  for (const auto& p : plans) stack += p.height();
  int y = spec.page_margin + rng.uniform_int(0, spec.page_height - 2 * spec.page_margin - stack);

  SynthDocument doc{GrayImage(spec.page_width, spec.page_height), {}, {}, {}};
  const std::string id = page_id(page_index);
  doc.gt = {id, spec.page_width, spec.page_height, {}};
  doc.perfect_detections = {id, spec.page_width, spec.page_height, {}};
  const int q = spec.gutter;

  for (const auto& plan : plans) {
    const int x = rng.uniform_int(spec.page_margin, spec.page_width - spec.page_margin - plan.width());
    const auto xs = prefix_positions(x, plan.col_widths);
    const auto ys = prefix_positions(y, plan.row_heights);
    const int t = plan.thickness;

    if (plan.type != SynthTableType::borderless) draw_rules(doc.image, plan, xs, ys, rng);

    GtTable table{plan.type == SynthTableType::bordered ? DetectionClass::bordered_table
                                                        : DetectionClass::borderless_table,
                  BBox(xs.front(), ys.front(), xs.back() + t, ys.back() + t), std::nullopt,
                  std::vector<GtCell>{}};
    SynthTableInfo info{plan.type, t, xs, ys, {}};
    std::vector<BBox> cell_boxes;
    for (const auto& c : plan.cells) {
      const BBox box(xs[c.c0] + t + q, ys[c.r0] + t + q, xs[c.c1] - q, ys[c.r1] - q);
      cell_boxes.push_back(box);
      const BBox gt_box = plan.type == SynthTableType::bordered
                              ? BBox(xs[c.c0] + t, ys[c.r0] + t, xs[c.c1], ys[c.r1])
                              : box;
      table.cells->push_back({gt_box, c.r0, c.r1, c.c0, c.c1});
      std::vector<BBox> blobs;
      if (!c.empty) {
        // A spanning cell's words sit inside one of its slots, so every blob
        // belongs to exactly one grid slot.
        const int r = rng.uniform_int(c.r0, c.r1 - 1);
        const int k = rng.uniform_int(c.c0, c.c1 - 1);
        blobs = place_blobs(BBox(xs[k] + t + q, ys[r] + t + q, xs[k + 1] - q, ys[r + 1] - q), spec.cell_padding,
                            rng);
      }
      for (const auto& b : blobs) {
        if (render) {
          render(doc.image, b);
        } else {
          doc.image.fill_rect(b, 0);
        }
      }
      info.cell_blobs.push_back(std::move(blobs));
    }
    if (plan.type == SynthTableType::borderless) table.bbox = *bounding_union(cell_boxes);

    doc.perfect_detections.instances.push_back(
        {table.cls, jitter_box(table.bbox, spec.jitter, spec.page_width, spec.page_height, rng), std::nullopt,
         1.0});
    // The bordered branch reads the grid from the rules, so ruled tables get
    // no cell detections.
    if (plan.type != SynthTableType::bordered) {
      for (const auto& cell : *table.cells) {
        doc.perfect_detections.instances.push_back(
            {DetectionClass::cell, jitter_box(cell.bbox, spec.jitter, spec.page_width, spec.page_height, rng),
             std::nullopt, 1.0});
      }
    }
    doc.gt.tables.push_back(std::move(table));
    doc.tables.push_back(std::move(info));
    y += plan.height() + spec.table_spacing;
  }

  validate(doc.gt);
  validate(doc.perfect_detections);
  return doc;
}

std::vector<SynthDocument> generate(const SynthSpec& spec, int n_pages, unsigned workers,
                                    const WordRenderer& render) {
  if (n_pages < 0) throw std::invalid_argument("n_pages must be non-negative");
  spec.validate();
  std::vector<std::optional<SynthDocument>> slots(static_cast<std::size_t>(n_pages));
  parallel_for(slots.size(), workers,
               [&](std::size_t i) { slots[i] = generate_page(spec, static_cast<int>(i), render); });
  std::vector<SynthDocument> docs;
  docs.reserve(slots.size());
  for (auto& s : slots) docs.push_back(std::move(*s));
  return docs;
}

PageDetections corrupt_detections(const SynthDocument& doc, double drop_frac, int jitter, std::uint64_t seed) {
  if (!(drop_frac >= 0.0 && drop_frac < 1.0)) throw std::invalid_argument("drop_frac must lie in [0, 1)");
  if (jitter < 0) throw std::invalid_argument("jitter must be non-negative");
  const auto& src = doc.perfect_detections;
  Xorshift64Star rng(seed);

  std::vector<std::size_t> cells;
  for (std::size_t i = 0; i < src.instances.size(); ++i) {
    if (src.instances[i].cls == DetectionClass::cell) cells.push_back(i);
  }
  const auto n = static_cast<int>(cells.size());
  const int n_drop = static_cast<int>(std::llround(drop_frac * n));
  std::set<std::size_t> dropped;
  for (int i = 0; i < n_drop; ++i) {
    std::swap(cells[i], cells[rng.uniform_int(i, n - 1)]);
    dropped.insert(cells[i]);
  }

  PageDetections out{src.image_id, src.width, src.height, {}};
  for (std::size_t i = 0; i < src.instances.size(); ++i) {
    if (dropped.count(i)) continue;
    auto inst = src.instances[i];
    inst.bbox = jitter_box(inst.bbox, jitter, src.width, src.height, rng);
    out.instances.push_back(std::move(inst));
  }
  return out;
}

namespace {

ojson bbox_json(const BBox& b) { return ojson::array({b.x0(), b.y0(), b.x1(), b.y1()}); }

ojson artifact(const std::filesystem::path& dir, const std::string& name, const std::string& text) {
  write_file(dir / name, text);
  ojson j;
  j["path"] = name;
  j["sha256"] = sha256_hex(std::string_view(text));
  return j;
}

}  // namespace

std::string write_corpus(const std::vector<SynthDocument>& docs, const SynthSpec& spec,
                         const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  ojson manifest;
  manifest["format_version"] = std::string(kFormatVersion);
  manifest["generator"] = {{"prng", "xorshift64*"}, {"page_seed", "splitmix64(seed + page_index)"}};
  manifest["spec"] = spec_json(spec);

  auto pages = ojson::array();
  auto annotations = ojson::array();
  std::vector<GroundTruthPage> gts;
  std::vector<PageDetections> dets;
  for (const auto& doc : docs) {
    const auto png = encode_png(doc.image);
    const std::string name = doc.gt.image_id + ".png";
    write_file(dir / name, png);
    ojson page;
    page["image_id"] = doc.gt.image_id;
    page["path"] = name;
    page["sha256"] = sha256_hex(png);
    pages.push_back(std::move(page));

    ojson ann;
    ann["image_id"] = doc.gt.image_id;
    ann["tables"] = ojson::array();
    for (const auto& info : doc.tables) {
      ojson t;
      t["type"] = std::string(to_string(info.type));
      t["line_thickness"] = info.line_thickness;
      t["row_separators"] = info.row_separators;
      t["col_separators"] = info.col_separators;
      auto blobs = ojson::array();
      for (const auto& cell : info.cell_blobs) {
        auto arr = ojson::array();
        for (const auto& b : cell) arr.push_back(bbox_json(b));
        blobs.push_back(std::move(arr));
      }
      t["cell_blobs"] = std::move(blobs);
      ann["tables"].push_back(std::move(t));
    }
    annotations.push_back(std::move(ann));
    gts.push_back(doc.gt);
    dets.push_back(doc.perfect_detections);
  }
  manifest["pages"] = std::move(pages);
  manifest["ground_truth"] = artifact(dir, "gt.json", serialize_ground_truth(gts));
  manifest["detections"] = artifact(dir, "detections.json", serialize_detections(dets));
  ojson ann_root;
  ann_root["format_version"] = std::string(kFormatVersion);
  ann_root["pages"] = std::move(annotations);
  manifest["annotations"] = artifact(dir, "annotations.json", ann_root.dump(2));

  const std::string text = manifest.dump(2);
  write_file(dir / "manifest.json", text);
  return text;
}

}  // namespace tabstruct
