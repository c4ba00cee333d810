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

#include <cstdint>
#include <filesystem>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tabstruct/detections.hpp"
#include "tabstruct/raster.hpp"

namespace tabstruct {

/// xorshift64* generator. The state is seeded through one splitmix64 step
/// so that every 64-bit seed (including 0) yields a non-zero state.
///
///   next():       x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
///                 return x * 0x2545F4914F6CDD1D
///   uniform_int:  lo + next() % (hi - lo + 1)
///   uniform01:    (next() >> 11) * 2^-53
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed);

  std::uint64_t next();
  int uniform_int(int lo, int hi);
  double uniform01();
  bool bernoulli(double p) { return uniform01() < p; }

 private:
  std::uint64_t state_;
};

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SynthTableType { bordered, borderless, semi_bordered };

std::string_view to_string(SynthTableType type);

struct IntRange {
  int min;
  int max;
};

struct SynthSpec {
  std::uint64_t seed = 1;
  int page_width = 1000;
  int page_height = 1400;
  IntRange tables_per_page{1, 3};
  IntRange rows{2, 6};
  IntRange cols{2, 5};
  std::vector<SynthTableType> types{SynthTableType::bordered, SynthTableType::borderless,
                                    SynthTableType::semi_bordered};
  double span_prob = 0.1;        // borderless and semi-bordered tables only
  double empty_cell_prob = 0.1;
  IntRange line_thickness{1, 3};
  int jitter = 2;                // perfect-detection box perturbation
  IntRange col_width{70, 110};   // per-table base; columns vary up to +10%
  IntRange row_height{26, 34};
  int cell_padding = 3;          // blob clearance inside the cell box
  int gutter = 5;                // clearance between a rule and a cell box
  int page_margin = 40;
  int table_spacing = 40;

  /// Throws SpecError when the spec cannot be rendered.
  void validate() const;

  static SynthSpec from_json(std::string_view document);
  std::string to_json() const;
};

/// Generator-side facts about a table that the ground truth JSON does not
/// carry. `cell_blobs` is aligned with the gt table's cells.
struct SynthTableInfo {
  SynthTableType type;
  int line_thickness;
  std::vector<int> row_separators;
  std::vector<int> col_separators;
  std::vector<std::vector<BBox>> cell_blobs;
};

struct SynthDocument {
  GrayImage image;
  GroundTruthPage gt;
  PageDetections perfect_detections;
  std::vector<SynthTableInfo> tables;  // aligned with gt.tables
};

/// Draws the text of one word into `box`. The default fills it with ink; a
/// glyph renderer can be swapped in here.
using WordRenderer = std::function<void(GrayImage& page, const BBox& box)>;

/// Page `page_index` of the corpus; seeded with spec.seed + page_index.
/// The page's image_id is page_NNNN.
SynthDocument generate_page(const SynthSpec& spec, int page_index, const WordRenderer& render = {});

/// Pages 0..n_pages-1. Output does not depend on `workers`.
std::vector<SynthDocument> generate(const SynthSpec& spec, int n_pages, unsigned workers = 1,
                                    const WordRenderer& render = {});

/// Drops round(drop_frac * n_cells) seeded-random cell instances and moves
/// every remaining box corner by a uniform offset in [-jitter, jitter].
/// Tables are never dropped.
PageDetections corrupt_detections(const SynthDocument& doc, double drop_frac, int jitter, std::uint64_t seed);

/// Writes <image_id>.png per page, gt.json, detections.json,
/// annotations.json (SynthTableInfo per table) and a manifest.json with
/// SHA-256 digests of every artifact. Returns the manifest text.
std::string write_corpus(const std::vector<SynthDocument>& docs, const SynthSpec& spec,
                         const std::filesystem::path& dir);

}  // namespace tabstruct
