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
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "tabstruct/image_io.hpp"
#include "tabstruct/raster.hpp"

namespace tabstruct {

struct DilationParams {
  int kernel_width = 2;
  int kernel_height = 2;
  int iterations = 1;
  BinarizeMethod binarize = BinarizeMethod::otsu();
};

/// Thickens ink: binarize, dilate, render ink as 0 and paper as 255.
GrayImage dilation_transform(const GrayImage& img, const DilationParams& params = {});

struct SmudgeParams {
  int cap_distance = 15;
  BinarizeMethod binarize = BinarizeMethod::otsu();
};

/// Distance-to-ink encoded as three channels (euclidean, cityblock,
/// chessboard). Each channel is round(255 * min(d, cap) / cap): 0 on ink,
/// 255 at cap distance or more. A page without ink is uniformly 255.
ColorImage smudge_transform(const GrayImage& img, const SmudgeParams& params = {});

/// Channel value for a distance; exposed for tests and tooling.
std::uint8_t smudge_value(double distance, int cap_distance);

enum class AugmentMode { dilate, smudge, both };

AugmentMode parse_augment_mode(const std::string& name);

struct AugmentEntry {
  std::string original;               // input file name, relative to the input dir
  std::optional<std::string> output;  // output file name, absent for skipped inputs
  std::string mode;                   // "original" | "dilate" | "smudge" | "skipped"
  std::string sha256;                 // digest of the output bytes
  std::string error;                  // reason, for skipped inputs
};

struct AugmentManifest {
  std::vector<AugmentEntry> entries;

  std::size_t skipped() const;
  std::size_t outputs() const;
  /// JSON array of {original, output, mode, ...}; stable byte output.
  std::string to_json() const;
};

struct AugmentOptions {
  DilationParams dilation;
  SmudgeParams smudge;
  unsigned workers = 1;
};

/// Copies every PNG/PGM image of input_dir into output_dir next to its
/// transformed variants and writes output_dir/manifest.json. Unreadable
/// images are recorded as skipped. Entries are ordered by input file name.
AugmentManifest augment_corpus(const std::filesystem::path& input_dir,
                               const std::filesystem::path& output_dir, AugmentMode mode,
                               const AugmentOptions& options = {});

}  // namespace tabstruct
