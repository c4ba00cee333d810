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

#include <gtest/gtest.h>

namespace tabstruct {
namespace {

TEST(Config, DefaultsAreValid) { EXPECT_NO_THROW(PipelineConfig{}.validate()); }

TEST(Config, MergeOverridesOnlyGivenKeys) {
  PipelineConfig c;
  c.merge_json(R"({"score_threshold": 0.7, "margin": 4})");
  EXPECT_DOUBLE_EQ(c.score_threshold, 0.7);
  EXPECT_EQ(c.margin, 4);
  EXPECT_EQ(c.snap_tol, PipelineConfig{}.snap_tol);
}

TEST(Config, RejectsBadInput) {
  PipelineConfig c;
  EXPECT_THROW(c.merge_json(R"({"scor_threshold": 0.7})"), ConfigError);
  EXPECT_THROW(c.merge_json(R"({"margin": 1.5})"), ConfigError);
  EXPECT_THROW(c.merge_json(R"({"score_threshold": "high"})"), ConfigError);
  EXPECT_THROW(c.merge_json(R"({"score_threshold": 1.5})"), ConfigError);
  EXPECT_THROW(c.merge_json("[1]"), ConfigError);
  EXPECT_THROW(c.merge_json("{"), ConfigError);
  // A failed merge leaves the config untouched.
  EXPECT_DOUBLE_EQ(c.score_threshold, PipelineConfig{}.score_threshold);
}

TEST(Config, JsonRoundTrip) {
  PipelineConfig c;
  c.span_factor = 2.5;
  c.text_merge_gap_x = 11;
  c.smudge_cap = 9;
  PipelineConfig d;
  d.merge_json(c.to_json());
  EXPECT_EQ(d.to_json(), c.to_json());
}

TEST(Config, ParamsFollowFields) {
  PipelineConfig c;
  c.text_merge_gap_x = 12;
  c.snap_tol = 7;
  c.recovery_inset = 6;
  c.smudge_cap = 20;
  c.dilate_kernel_width = 3;
  EXPECT_EQ(c.text_params().merge_gap_x, 12);
  EXPECT_EQ(c.bordered_params().snap_tol, 7);
  EXPECT_EQ(c.bordered_params().text.merge_gap_x, 12);
  EXPECT_EQ(c.borderless_params().recovery_inset, 6);
  EXPECT_EQ(c.smudge_params().cap_distance, 20);
  EXPECT_EQ(c.dilation_params().kernel_width, 3);
}

}  // namespace
}  // namespace tabstruct
