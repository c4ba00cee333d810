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

#include "tabstruct/config.hpp"

#include <functional>
#include <map>

#include <nlohmann/json.hpp>

namespace tabstruct {

using ojson = nlohmann::ordered_json;

namespace {

template <typename T>
void require(bool ok, const char* key, const T& value, const char* range) {
  if (!ok) {
    throw ConfigError(std::string("config value ") + key + " = " + ojson(value).dump() + " outside " + range);
  }
}

// Visits each member with its JSON key, in declaration order.
template <typename Config, typename Fn>
void for_each_field(Config& c, Fn&& fn) {
  fn("score_threshold", c.score_threshold);
  fn("overlap_frac", c.overlap_frac);
  fn("span_factor", c.span_factor);
  fn("margin", c.margin);
  fn("recovery_inset", c.recovery_inset);
  fn("min_len_frac", c.min_len_frac);
  fn("min_line_run", c.min_line_run);
  fn("line_gap_bridge", c.line_gap_bridge);
  fn("line_merge_dist", c.line_merge_dist);
  fn("max_line_thickness", c.max_line_thickness);
  fn("snap_tol", c.snap_tol);
  fn("text_min_area", c.text_min_area);
  fn("text_merge_gap_x", c.text_merge_gap_x);
  fn("text_merge_gap_y", c.text_merge_gap_y);
  fn("smudge_cap", c.smudge_cap);
  fn("dilate_kernel_width", c.dilate_kernel_width);
  fn("dilate_kernel_height", c.dilate_kernel_height);
  fn("dilate_iterations", c.dilate_iterations);
}

}  // namespace

void PipelineConfig::validate() const {
  require(score_threshold >= 0.0 && score_threshold <= 1.0, "score_threshold", score_threshold, "[0, 1]");
  require(overlap_frac > 0.0 && overlap_frac <= 1.0, "overlap_frac", overlap_frac, "(0, 1]");
  require(span_factor > 1.0, "span_factor", span_factor, "(1, inf)");
  require(margin >= 0, "margin", margin, "[0, inf)");
  require(recovery_inset >= 0, "recovery_inset", recovery_inset, "[0, inf)");
  require(min_len_frac > 0.0 && min_len_frac <= 1.0, "min_len_frac", min_len_frac, "(0, 1]");
  require(min_line_run >= 1, "min_line_run", min_line_run, "[1, inf)");
  require(line_gap_bridge >= 0, "line_gap_bridge", line_gap_bridge, "[0, inf)");
  require(line_merge_dist >= 0, "line_merge_dist", line_merge_dist, "[0, inf)");
  require(max_line_thickness >= 1, "max_line_thickness", max_line_thickness, "[1, inf)");
  require(snap_tol >= 0, "snap_tol", snap_tol, "[0, inf)");
  require(text_min_area >= 1, "text_min_area", text_min_area, "[1, inf)");
  require(text_merge_gap_x >= 0, "text_merge_gap_x", text_merge_gap_x, "[0, inf)");
  require(text_merge_gap_y >= 0, "text_merge_gap_y", text_merge_gap_y, "[0, inf)");
  require(smudge_cap >= 1, "smudge_cap", smudge_cap, "[1, inf)");
  require(dilate_kernel_width >= 1, "dilate_kernel_width", dilate_kernel_width, "[1, inf)");
  require(dilate_kernel_height >= 1, "dilate_kernel_height", dilate_kernel_height, "[1, inf)");
  require(dilate_iterations >= 0, "dilate_iterations", dilate_iterations, "[0, inf)");
}

TextDetectionParams PipelineConfig::text_params() const {
  return {text_min_area, text_merge_gap_x, text_merge_gap_y};
}

BorderedParams PipelineConfig::bordered_params() const {
  return {{min_len_frac, min_line_run, line_gap_bridge, line_merge_dist, max_line_thickness}, snap_tol,
          text_params()};
}

BorderlessParams PipelineConfig::borderless_params() const {
  return {overlap_frac, span_factor, margin, recovery_inset, text_params()};
}

DilationParams PipelineConfig::dilation_params() const {
  return {dilate_kernel_width, dilate_kernel_height, dilate_iterations, BinarizeMethod::otsu()};
}

SmudgeParams PipelineConfig::smudge_params() const { return {smudge_cap, BinarizeMethod::otsu()}; }

void PipelineConfig::merge_json(std::string_view document) {
  ojson j;
  try {
    j = ojson::parse(document.begin(), document.end());
  } catch (const ojson::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  PipelineConfig next = *this;
  std::map<std::string, bool> known;
  for_each_field(next, [&](const char* key, auto& member) {
    known[key] = true;
    auto it = j.find(key);
    if (it == j.end()) return;
    using T = std::remove_reference_t<decltype(member)>;
    if constexpr (std::is_same_v<T, int>) {
      if (!it->is_number_integer()) throw ConfigError(std::string("config value ") + key + " must be an integer");
      member = it->template get<int>();
    } else {
      if (!it->is_number()) throw ConfigError(std::string("config value ") + key + " must be a number");
      member = it->template get<double>();
    }
  });
  for (const auto& [key, _] : j.items()) {
    if (!known.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  next.validate();
  *this = next;
}

std::string PipelineConfig::to_json() const {
  ojson j = ojson::object();
  PipelineConfig copy = *this;
  for_each_field(copy, [&](const char* key, auto& member) { j[key] = member; });
  return j.dump();
}

}  // namespace tabstruct
