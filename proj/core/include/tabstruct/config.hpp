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

#include <stdexcept>
#include <string>
#include <string_view>

#include "tabstruct/bordered.hpp"
#include "tabstruct/borderless.hpp"
#include "tabstruct/transforms.hpp"

namespace tabstruct {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tunable of the toolkit. JSON keys match the member names.
struct PipelineConfig {
  double score_threshold = 0.5;

  // borderless branch
  double overlap_frac = 0.5;
  double span_factor = 1.8;
  int margin = 2;
  int recovery_inset = 4;

  // bordered branch
  double min_len_frac = 0.5;
  int min_line_run = 15;
  int line_gap_bridge = 3;
  int line_merge_dist = 3;
  int max_line_thickness = 5;
  int snap_tol = 5;

  // text detection
  int text_min_area = 4;
  int text_merge_gap_x = 8;
  int text_merge_gap_y = 2;

  // augmentation
  int smudge_cap = 15;
  int dilate_kernel_width = 2;
  int dilate_kernel_height = 2;
  int dilate_iterations = 1;

  /// Throws ConfigError when a value leaves its documented range.
  void validate() const;

  TextDetectionParams text_params() const;
  BorderedParams bordered_params() const;
  BorderlessParams borderless_params() const;
  DilationParams dilation_params() const;
  SmudgeParams smudge_params() const;

  /// Applies the keys present in a JSON object; unknown keys are rejected.
  void merge_json(std::string_view document);
  std::string to_json() const;
};

}  // namespace tabstruct
