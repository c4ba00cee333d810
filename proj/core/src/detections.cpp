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

#include "tabstruct/detections.hpp"

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

namespace tabstruct {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

std::string_view to_string(DetectionClass cls) {
  switch (cls) {
    case DetectionClass::bordered_table:
      return "bordered_table";
    case DetectionClass::borderless_table:
      return "borderless_table";
    case DetectionClass::cell:
      return "cell";
  }
  return "?";
}

DetectionClass parse_detection_class(std::string_view name) {
  if (name == "bordered_table") return DetectionClass::bordered_table;
  if (name == "borderless_table") return DetectionClass::borderless_table;
  if (name == "cell") return DetectionClass::cell;
  throw std::invalid_argument("unknown class '" + std::string(name) + "'");
}

ValidationError::ValidationError(std::string image_id, std::optional<std::size_t> instance,
                                 std::string rule)
    : std::runtime_error("image_id '" + image_id + "'" +
                         (instance ? ", instance " + std::to_string(*instance) : std::string()) +
                         ": " + rule),
      image_id_(std::move(image_id)),
      instance_(instance),
      rule_(std::move(rule)) {}

// ---------------------------------------------------------------------------
// Geometry helpers

std::optional<BBox> polygon_bounds(const Polygon& poly) {
  if (poly.empty()) return std::nullopt;
  int x0 = poly[0].x, x1 = poly[0].x, y0 = poly[0].y, y1 = poly[0].y;
  for (const auto& p : poly) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  if (x1 <= x0 || y1 <= y0) return std::nullopt;
  return BBox{x0, y0, x1, y1};
}

namespace {

long long cross(const Point& o, const Point& a, const Point& b) {
  return static_cast<long long>(a.x - o.x) * (b.y - o.y) - static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Point& p, const Point& a, const Point& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_touch(const Point& a, const Point& b, const Point& c, const Point& d) {
  const auto d1 = cross(c, d, a), d2 = cross(c, d, b), d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  return (d1 == 0 && on_segment(a, c, d)) || (d2 == 0 && on_segment(b, c, d)) ||
         (d3 == 0 && on_segment(c, a, b)) || (d4 == 0 && on_segment(d, a, b));
}

}  // namespace

bool is_simple_polygon(const Polygon& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  long long area2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    if (a == b) return false;
    area2 += static_cast<long long>(a.x) * b.y - static_cast<long long>(b.x) * a.y;
  }
  if (area2 == 0) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      if (adjacent) {
        // Adjacent edges may only share their common vertex: reject folds back.
        const auto& shared = j == i + 1 ? poly[j] : poly[i];
        const auto& p = j == i + 1 ? poly[i] : poly[(i + 1) % n];
        const auto& q = j == i + 1 ? poly[(j + 1) % n] : poly[j];
        if (cross(shared, p, q) == 0) {
          const long long dot = static_cast<long long>(p.x - shared.x) * (q.x - shared.x) +
                                static_cast<long long>(p.y - shared.y) * (q.y - shared.y);
          if (dot > 0) return false;
        }
        continue;
      }
      if (segments_touch(poly[i], poly[(i + 1) % n], poly[j], poly[(j + 1) % n])) return false;
    }
  }
  return true;
}

BBox DetectionInstance::region() const {
  if (mask) {
    if (auto b = polygon_bounds(*mask)) return *b;
  }
  return bbox;
}

int GtTable::n_rows() const {
  int n = 0;
  if (cells) {
    for (const auto& c : *cells) n = std::max(n, c.r1);
  }
  return n;
}

int GtTable::n_cols() const {
  int n = 0;
  if (cells) {
    for (const auto& c : *cells) n = std::max(n, c.c1);
  }
  return n;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

void validate_region(const std::string& id, std::size_t idx, int width, int height,
                     const BBox& bbox, const std::optional<Polygon>& mask) {
  if (bbox.x0() < 0 || bbox.y0() < 0 || bbox.x1() > width || bbox.y1() > height) {
    throw ValidationError(id, idx, "bbox outside page bounds");
  }
  if (!mask) return;
  if (mask->size() < 3) throw ValidationError(id, idx, "mask needs at least 3 vertices");
  if (!is_simple_polygon(*mask)) throw ValidationError(id, idx, "mask is not a simple polygon");
  const auto mb = polygon_bounds(*mask);
  if (!mb || mb->x0() < bbox.x0() - 2 || mb->y0() < bbox.y0() - 2 || mb->x1() > bbox.x1() + 2 ||
      mb->y1() > bbox.y1() + 2) {
    throw ValidationError(id, idx, "mask extends more than 2 px beyond bbox");
  }
}

void validate_page_header(const std::string& id, int width, int height) {
  if (id.empty()) throw ValidationError(id, std::nullopt, "empty image_id");
  if (width < 1 || height < 1) throw ValidationError(id, std::nullopt, "page dimensions must be positive");
}

}  // namespace

void validate(const PageDetections& page) {
  validate_page_header(page.image_id, page.width, page.height);
  for (std::size_t i = 0; i < page.instances.size(); ++i) {
    const auto& inst = page.instances[i];
    if (!(inst.score >= 0.0 && inst.score <= 1.0)) {
      throw ValidationError(page.image_id, i, "score out of range");
    }
    validate_region(page.image_id, i, page.width, page.height, inst.bbox, inst.mask);
  }
}

void validate(const GroundTruthPage& page) {
  validate_page_header(page.image_id, page.width, page.height);
  for (std::size_t i = 0; i < page.tables.size(); ++i) {
    const auto& t = page.tables[i];
    if (!is_table(t.cls)) {
      throw ValidationError(page.image_id, i, "ground-truth instances must be tables; cells nest under them");
    }
    validate_region(page.image_id, i, page.width, page.height, t.bbox, t.mask);
    if (!t.cells) continue;
    std::vector<std::vector<int>> owner;
    const int rows = t.n_rows(), cols = t.n_cols();
    owner.assign(rows, std::vector<int>(cols, -1));
    for (std::size_t k = 0; k < t.cells->size(); ++k) {
      const auto& c = (*t.cells)[k];
      const auto where = "cell " + std::to_string(k) + ": ";
      if (c.r0 < 0 || c.r1 <= c.r0 || c.c0 < 0 || c.c1 <= c.c0) {
        throw ValidationError(page.image_id, i, where + "invalid row/col span");
      }
      if (c.bbox.x0() < 0 || c.bbox.y0() < 0 || c.bbox.x1() > page.width || c.bbox.y1() > page.height) {
        throw ValidationError(page.image_id, i, where + "bbox outside page bounds");
      }
      for (int r = c.r0; r < c.r1; ++r) {
        for (int col = c.c0; col < c.c1; ++col) {
          if (owner[r][col] >= 0) throw ValidationError(page.image_id, i, where + "span overlaps another cell");
          owner[r][col] = static_cast<int>(k);
        }
      }
    }
  }
}

// ---------------------------------------------------------------------------
// JSON

namespace {

struct Reader {
  std::string image_id;
  std::optional<std::size_t> instance;

  [[noreturn]] void fail(const std::string& rule) const { throw ValidationError(image_id, instance, rule); }

  void only_keys(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view what) const {
    for (const auto& [key, _] : obj.items()) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        fail("unknown key '" + key + "' in " + std::string(what));
      }
    }
  }

  const json& field(const json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) fail(std::string("missing field '") + key + "'");
    return *it;
  }

  int integer(const json& v, const char* what) const {
    if (!v.is_number_integer()) fail(std::string(what) + " must be an integer");
    const auto n = v.get<long long>();
    if (n < -(1LL << 30) || n > (1LL << 30)) fail(std::string(what) + " out of range");
    return static_cast<int>(n);
  }

  BBox bbox(const json& v) const {
    if (!v.is_array() || v.size() != 4) fail("bbox must be [x0,y0,x1,y1]");
    const int x0 = integer(v[0], "bbox"), y0 = integer(v[1], "bbox");
    const int x1 = integer(v[2], "bbox"), y1 = integer(v[3], "bbox");
    if (x1 <= x0 || y1 <= y0) fail("empty bbox");
    return {x0, y0, x1, y1};
  }

  std::pair<int, int> span(const json& v, const char* what) const {
    if (!v.is_array() || v.size() != 2) fail(std::string(what) + " must be [start,end]");
    return {integer(v[0], what), integer(v[1], what)};
  }

  Polygon polygon(const json& v) const {
    if (!v.is_array()) fail("mask must be an array of [x,y] vertices");
    Polygon poly;
    for (const auto& p : v) {
      if (!p.is_array() || p.size() != 2) fail("mask vertex must be [x,y]");
      poly.push_back({integer(p[0], "mask vertex"), integer(p[1], "mask vertex")});
    }
    return poly;
  }

  DetectionClass cls(const json& v) const {
    if (!v.is_string()) fail("class must be a string");
    try {
      return parse_detection_class(v.get<std::string>());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }
};

json parse_json(std::string_view document) {
  try {
    return json::parse(document.begin(), document.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

const json& pages_array(const json& root) {
  Reader top;
  if (!root.is_object()) top.fail("top level must be an object");
  top.only_keys(root, {"format_version", "pages"}, "document");
  if (auto it = root.find("format_version"); it != root.end()) {
    if (!it->is_string() || it->get<std::string>() != kFormatVersion) {
      top.fail("unsupported format_version (expected \"1\")");
    }
  }
  const auto& pages = top.field(root, "pages");
  if (!pages.is_array()) top.fail("pages must be an array");
  return pages;
}

Reader page_reader(const json& page, std::set<std::string>& seen) {
  Reader r;
  if (!page.is_object()) r.fail("page must be an object");
  const auto& id = r.field(page, "image_id");
  if (!id.is_string()) r.fail("image_id must be a string");
  r.image_id = id.get<std::string>();
  if (!seen.insert(r.image_id).second) r.fail("duplicate image_id");
  return r;
}

ojson to_json(const BBox& b) { return ojson::array({b.x0(), b.y0(), b.x1(), b.y1()}); }

ojson to_json(const Polygon& poly) {
  auto arr = ojson::array();
  for (const auto& p : poly) arr.push_back(ojson::array({p.x, p.y}));
  return arr;
}

}  // namespace

std::vector<PageDetections> parse_detections(std::string_view document) {
  const auto root = parse_json(document);
  std::vector<PageDetections> out;
  std::set<std::string> seen;
  for (const auto& page : pages_array(root)) {
    Reader r = page_reader(page, seen);
    r.only_keys(page, {"image_id", "width", "height", "instances"}, "page");
    PageDetections pd;
    pd.image_id = r.image_id;
    pd.width = r.integer(r.field(page, "width"), "width");
    pd.height = r.integer(r.field(page, "height"), "height");
    const auto& instances = r.field(page, "instances");
    if (!instances.is_array()) r.fail("instances must be an array");
    for (std::size_t i = 0; i < instances.size(); ++i) {
      r.instance = i;
      const auto& inst = instances[i];
      if (!inst.is_object()) r.fail("instance must be an object");
      r.only_keys(inst, {"class", "bbox", "mask", "score"}, "instance");
      const auto& score = r.field(inst, "score");
      if (!score.is_number()) r.fail("score must be a number");
      std::optional<Polygon> mask;
      if (auto it = inst.find("mask"); it != inst.end()) mask = r.polygon(*it);
      pd.instances.push_back(DetectionInstance{r.cls(r.field(inst, "class")), r.bbox(r.field(inst, "bbox")),
                                               std::move(mask), score.get<double>()});
    }
    validate(pd);
    out.push_back(std::move(pd));
  }
  return out;
}

std::string serialize_detections(std::span<const PageDetections> pages) {
  ojson root;
  root["format_version"] = kFormatVersion;
  root["pages"] = ojson::array();
  for (const auto& p : pages) {
    ojson page;
    page["image_id"] = p.image_id;
    page["width"] = p.width;
    page["height"] = p.height;
    page["instances"] = ojson::array();
    for (const auto& inst : p.instances) {
      ojson j;
      j["class"] = to_string(inst.cls);
      j["bbox"] = to_json(inst.bbox);
      if (inst.mask) j["mask"] = to_json(*inst.mask);
      j["score"] = inst.score;
      page["instances"].push_back(std::move(j));
    }
    root["pages"].push_back(std::move(page));
  }
  return root.dump(2) + "\n";
}

std::vector<GroundTruthPage> parse_ground_truth(std::string_view document) {
  const auto root = parse_json(document);
  std::vector<GroundTruthPage> out;
  std::set<std::string> seen;
  for (const auto& page : pages_array(root)) {
    Reader r = page_reader(page, seen);
    r.only_keys(page, {"image_id", "width", "height", "instances"}, "page");
    GroundTruthPage gt;
    gt.image_id = r.image_id;
    gt.width = r.integer(r.field(page, "width"), "width");
    gt.height = r.integer(r.field(page, "height"), "height");
    const auto& instances = r.field(page, "instances");
    if (!instances.is_array()) r.fail("instances must be an array");
    for (std::size_t i = 0; i < instances.size(); ++i) {
      r.instance = i;
      const auto& inst = instances[i];
      if (!inst.is_object()) r.fail("instance must be an object");
      r.only_keys(inst, {"class", "bbox", "mask", "cells"}, "ground-truth instance");
      std::optional<Polygon> mask;
      if (auto it = inst.find("mask"); it != inst.end()) mask = r.polygon(*it);
      std::optional<std::vector<GtCell>> cells;
      if (auto it = inst.find("cells"); it != inst.end()) {
        if (!it->is_array()) r.fail("cells must be an array");
        cells.emplace();
        for (const auto& c : *it) {
          if (!c.is_object()) r.fail("cell must be an object");
          r.only_keys(c, {"bbox", "row", "col"}, "cell");
          const auto [r0, r1] = r.span(r.field(c, "row"), "row");
          const auto [c0, c1] = r.span(r.field(c, "col"), "col");
          cells->push_back(GtCell{r.bbox(r.field(c, "bbox")), r0, r1, c0, c1});
        }
      }
      gt.tables.push_back(GtTable{r.cls(r.field(inst, "class")), r.bbox(r.field(inst, "bbox")),
                                  std::move(mask), std::move(cells)});
    }
    validate(gt);
    out.push_back(std::move(gt));
  }
  return out;
}

std::string serialize_ground_truth(std::span<const GroundTruthPage> pages) {
  ojson root;
  root["format_version"] = kFormatVersion;
  root["pages"] = ojson::array();
  for (const auto& p : pages) {
    ojson page;
    page["image_id"] = p.image_id;
    page["width"] = p.width;
    page["height"] = p.height;
    page["instances"] = ojson::array();
    for (const auto& t : p.tables) {
      ojson j;
      j["class"] = to_string(t.cls);
      j["bbox"] = to_json(t.bbox);
      if (t.mask) j["mask"] = to_json(*t.mask);
      if (t.cells) {
        j["cells"] = ojson::array();
        for (const auto& c : *t.cells) {
          ojson cj;
          cj["bbox"] = to_json(c.bbox);
          cj["row"] = ojson::array({c.r0, c.r1});
          cj["col"] = ojson::array({c.c0, c.c1});
          j["cells"].push_back(std::move(cj));
        }
      }
      page["instances"].push_back(std::move(j));
    }
    root["pages"].push_back(std::move(page));
  }
  return root.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Filtering and assignment

PageDetections filter_by_score(const PageDetections& page, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("score threshold must lie in [0, 1]");
  PageDetections out{page.image_id, page.width, page.height, {}};
  std::copy_if(page.instances.begin(), page.instances.end(), std::back_inserter(out.instances),
               [&](const DetectionInstance& d) { return d.score >= threshold; });
  return out;
}

CellAssignment assign_cells(const PageDetections& page) {
  CellAssignment out;
  for (std::size_t i = 0; i < page.instances.size(); ++i) {
    const auto& inst = page.instances[i];
    if (is_table(inst.cls)) out.tables.push_back(TableGroup{i, inst, {}});
  }
  for (const auto& inst : page.instances) {
    if (inst.cls != DetectionClass::cell) continue;
    const auto r = inst.region();
    const int cx2 = r.center2_x(), cy2 = r.center2_y();
    TableGroup* best = nullptr;
    for (auto& g : out.tables) {
      if (g.table.cls != DetectionClass::borderless_table) continue;
      const auto& t = g.table.bbox;
      const bool inside = 2 * t.x0() <= cx2 && cx2 < 2 * t.x1() && 2 * t.y0() <= cy2 && cy2 < 2 * t.y1();
      if (inside && (!best || t.area() < best->table.bbox.area())) best = &g;
    }
    if (best) {
      best->cells.push_back(inst);
    } else {
      ++out.dropped_cells;
    }
  }
  return out;
}

}  // namespace tabstruct
