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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tabstruct/config.hpp"

namespace tabstruct::cli {

/// Exit codes shared by every command.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSkipped = 2;  // augment: at least one input skipped

/// Where the effective PipelineConfig comes from. Precedence: `overrides`
/// (KEY=VALUE, VALUE parsed as JSON) > `config_file` or the
/// TABSTRUCT_CONFIG environment variable > built-in defaults.
struct ConfigSource {
  std::optional<std::filesystem::path> config_file;
  std::vector<std::string> overrides;
};

/// Throws ConfigError on unreadable files, unknown keys or bad values.
PipelineConfig resolve_config(const ConfigSource& source);

struct AugmentArgs {
  std::filesystem::path input_dir;
  std::filesystem::path output_dir;
  std::string mode = "both";
  ConfigSource config;
  unsigned workers = 0;  // 0 = all available cores
};

struct RecognizeArgs {
  // Single page.
  std::optional<std::filesystem::path> image;
  std::optional<std::filesystem::path> out;
  std::optional<std::string> image_id;
  // Corpus: every page of the detections file, images looked up as
  // <images_dir>/<image_id>.png (or .pgm), one <image_id>.structure.json each.
  std::optional<std::filesystem::path> images_dir;
  std::optional<std::filesystem::path> out_dir;

  std::filesystem::path detections;
  ConfigSource config;
  unsigned workers = 0;
};

struct EvaluateArgs {
  /// Structure JSON file, directory of *.structure.json, detections JSON
  /// (score threshold applies) or ground-truth-format JSON.
  std::optional<std::filesystem::path> pred;
  std::optional<std::filesystem::path> gt;
  std::string protocol = "icdar19";
  std::optional<std::filesystem::path> report;
  /// Stored per-threshold F1 rows, printed as a threshold/WAvg. table.
  std::optional<std::filesystem::path> f1_fixture;
  ConfigSource config;
};

struct SynthArgs {
  std::optional<std::filesystem::path> spec;
  int pages = 0;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;  // overrides the spec's seed
  unsigned workers = 0;
};

int cmd_augment(const AugmentArgs& args, std::ostream& out, std::ostream& err);
int cmd_recognize(const RecognizeArgs& args, std::ostream& out, std::ostream& err);
int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err);

}  // namespace tabstruct::cli
