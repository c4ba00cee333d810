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

#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tabstruct/detections.hpp"

namespace tabstruct {

using ojson = nlohmann::ordered_json;

std::string_view to_string(TableType type) {
  return type == TableType::bordered ? "bordered" : "borderless";
}

std::string_view to_string(CellSource source) {
  return source == CellSource::model ? "model" : "recovered";
}

bool spans_valid(const TableStructure& table) {
  if (table.n_rows < 1 || table.n_cols < 1) return false;
  std::vector<char> taken(static_cast<std::size_t>(table.n_rows) * table.n_cols, 0);
  for (const auto& c : table.cells) {
    if (c.r0 < 0 || c.r1 <= c.r0 || c.r1 > table.n_rows) return false;
    if (c.c0 < 0 || c.c1 <= c.c0 || c.c1 > table.n_cols) return false;
    for (int r = c.r0; r < c.r1; ++r) {
      for (int k = c.c0; k < c.c1; ++k) {
        auto& t = taken[static_cast<std::size_t>(r) * table.n_cols + k];
        if (t) return false;
        t = 1;
      }
    }
  }
  return true;
}

namespace {

ojson box_json(const BBox& b) { return ojson::array({b.x0(), b.y0(), b.x1(), b.y1()}); }

BBox box_from(const ojson& v) {
  if (!v.is_array() || v.size() != 4) throw ValidationError("", std::nullopt, "bbox must be [x0,y0,x1,y1]");
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ValidationError("", std::nullopt, "bbox must hold integers");
  }
  const int x0 = v[0].get<int>(), y0 = v[1].get<int>(), x1 = v[2].get<int>(), y1 = v[3].get<int>();
  if (x1 <= x0 || y1 <= y0) throw ValidationError("", std::nullopt, "empty bbox");
  return {x0, y0, x1, y1};
}

std::string image_id_of(const ojson& root) {
  if (root.is_object()) {
    if (auto it = root.find("image_id"); it != root.end() && it->is_string()) return it->get<std::string>();
  }
  return {};
}

}  // namespace

std::string serialize_structure(const PageStructure& page) {
  ojson root;
  root["format_version"] = kFormatVersion;
  root["image_id"] = page.image_id;
  root["tables"] = ojson::array();
  for (const auto& t : page.tables) {
    ojson tj;
    tj["bbox"] = box_json(t.table_bbox);
    tj["type"] = to_string(t.type);
    tj["n_rows"] = t.n_rows;
    tj["n_cols"] = t.n_cols;
    tj["cells"] = ojson::array();
    for (const auto& c : t.cells) {
      ojson cj;
      cj["row"] = ojson::array({c.r0, c.r1});
      cj["col"] = ojson::array({c.c0, c.c1});
      cj["bbox"] = box_json(c.bbox);
      cj["content"] = ojson::array();
      for (const auto& b : c.content) cj["content"].push_back(box_json(b));
      cj["source"] = to_string(c.source);
      tj["cells"].push_back(std::move(cj));
    }
    root["tables"].push_back(std::move(tj));
  }
  return root.dump(2) + "\n";
}

PageStructure parse_structure(std::string_view document) {
  ojson root;
  try {
    root = ojson::parse(document.begin(), document.end());
  } catch (const ojson::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
  try {
    PageStructure page;
    page.image_id = root.at("image_id").get<std::string>();
    for (const auto& tj : root.at("tables")) {
      const auto type_name = tj.at("type").get<std::string>();
      if (type_name != "bordered" && type_name != "borderless") {
        throw ValidationError(page.image_id, std::nullopt, "unknown table type '" + type_name + "'");
      }
      TableStructure t{box_from(tj.at("bbox")),
                       type_name == "bordered" ? TableType::bordered : TableType::borderless,
                       tj.at("n_rows").get<int>(),
                       tj.at("n_cols").get<int>(),
                       {},
                       {},
                       {},
                       {}};
      for (const auto& cj : tj.at("cells")) {
        StructureCell c{cj.at("row").at(0).get<int>(), cj.at("row").at(1).get<int>(),
                        cj.at("col").at(0).get<int>(), cj.at("col").at(1).get<int>(),
                        box_from(cj.at("bbox")), {}, CellSource::model};
        for (const auto& b : cj.at("content")) c.content.push_back(box_from(b));
        const auto src = cj.at("source").get<std::string>();
        if (src == "recovered") {
          c.source = CellSource::recovered;
        } else if (src != "model") {
          throw ValidationError(page.image_id, std::nullopt, "unknown cell source '" + src + "'");
        }
        t.cells.push_back(std::move(c));
      }
      if (!spans_valid(t)) throw ValidationError(page.image_id, std::nullopt, "cell spans overlap or leave the grid");
      page.tables.push_back(std::move(t));
    }
    return page;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(image_id_of(root), std::nullopt, e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(image_id_of(root), std::nullopt, e.what());
  }
}

}  // namespace tabstruct
