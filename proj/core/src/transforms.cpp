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

#include "tabstruct/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tabstruct/hashing.hpp"
#include "tabstruct/parallel.hpp"

namespace tabstruct {

namespace fs = std::filesystem;

GrayImage dilation_transform(const GrayImage& img, const DilationParams& params) {
  const auto ink = binarize(img, params.binarize);
  return dilate_binary(ink, params.kernel_width, params.kernel_height, params.iterations).to_gray();
}

std::uint8_t smudge_value(double distance, int cap_distance) {
  const double cap = cap_distance;
  const double v = std::round(255.0 * std::min(distance, cap) / cap);
  return static_cast<std::uint8_t>(std::clamp(v, 0.0, 255.0));
}

ColorImage smudge_transform(const GrayImage& img, const SmudgeParams& params) {
  if (params.cap_distance < 1) throw std::invalid_argument("smudge cap_distance must be >= 1");
  const auto ink = binarize(img, params.binarize);
  ColorImage out(img.width(), img.height());
  // The no-ink sentinel (width + height) may be below the cap on tiny pages.
  if (ink.count() == 0) return out;

  constexpr DistanceMetric kChannels[3] = {DistanceMetric::euclidean, DistanceMetric::cityblock,
                                           DistanceMetric::chessboard};
  for (int c = 0; c < 3; ++c) {
    const auto field = distance_transform(ink, kChannels[c]);
    for (int y = 0; y < img.height(); ++y) {
      for (int x = 0; x < img.width(); ++x) {
        out.set(c, x, y, smudge_value(field.at(x, y), params.cap_distance));
      }
    }
  }
  return out;
}

AugmentMode parse_augment_mode(const std::string& name) {
  if (name == "dilate") return AugmentMode::dilate;
  if (name == "smudge") return AugmentMode::smudge;
  if (name == "both") return AugmentMode::both;
  throw std::invalid_argument("unknown augment mode '" + name + "' (expected dilate|smudge|both)");
}

std::size_t AugmentManifest::skipped() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(),
                                                [](const auto& e) { return !e.output; }));
}

std::size_t AugmentManifest::outputs() const { return entries.size() - skipped(); }

std::string AugmentManifest::to_json() const {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    nlohmann::ordered_json j;
    j["original"] = e.original;
    j["output"] = e.output ? nlohmann::ordered_json(*e.output) : nlohmann::ordered_json(nullptr);
    j["mode"] = e.mode;
    if (e.output) j["sha256"] = e.sha256;
    if (!e.error.empty()) j["error"] = e.error;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

namespace {

bool is_image_file(const fs::path& p) {
  auto ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".png" || ext == ".pgm";
}

std::vector<AugmentEntry> augment_one(const fs::path& input, const fs::path& output_dir,
                                      AugmentMode mode, const AugmentOptions& options) {
  const auto name = input.filename().string();
  std::vector<std::uint8_t> bytes;
  GrayImage img(1, 1);
  try {
    bytes = read_file(input);
    img = decode_gray(bytes);
  } catch (const std::exception& e) {
    return {AugmentEntry{name, std::nullopt, "skipped", "", e.what()}};
  }

  std::vector<AugmentEntry> out;
  write_file(output_dir / name, bytes);
  out.push_back({name, name, "original", sha256_hex(bytes), ""});

  const auto stem = input.stem().string();
  if (mode == AugmentMode::dilate || mode == AugmentMode::both) {
    const auto png = encode_png(dilation_transform(img, options.dilation));
    const auto out_name = stem + "_dilate.png";
    write_file(output_dir / out_name, png);
    out.push_back({name, out_name, "dilate", sha256_hex(png), ""});
  }
  if (mode == AugmentMode::smudge || mode == AugmentMode::both) {
    const auto png = encode_png(smudge_transform(img, options.smudge));
    const auto out_name = stem + "_smudge.png";
    write_file(output_dir / out_name, png);
    out.push_back({name, out_name, "smudge", sha256_hex(png), ""});
  }
  return out;
}

}  // namespace

AugmentManifest augment_corpus(const fs::path& input_dir, const fs::path& output_dir,
                               AugmentMode mode, const AugmentOptions& options) {
  if (!fs::is_directory(input_dir)) {
    throw std::runtime_error("input directory does not exist: " + input_dir.string());
  }
  std::vector<fs::path> inputs;
  for (const auto& entry : fs::directory_iterator(input_dir)) {
    if (entry.is_regular_file() && is_image_file(entry.path())) inputs.push_back(entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  if (fs::exists(output_dir) && fs::equivalent(input_dir, output_dir)) {
    throw std::runtime_error("output directory must differ from the input directory");
  }
  fs::create_directories(output_dir);

  // a.png and a.pgm would both write a_dilate.png; the later one is skipped.
  std::map<std::string, std::string> first_by_stem;
  std::vector<std::string> collision(inputs.size());
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    auto [it, fresh] = first_by_stem.emplace(inputs[i].stem().string(), inputs[i].filename().string());
    if (!fresh) collision[i] = "output names collide with " + it->second;
  }

  std::vector<std::vector<AugmentEntry>> per_input(inputs.size());
  parallel_for(inputs.size(), options.workers, [&](std::size_t i) {
    if (!collision[i].empty()) {
      per_input[i] = {AugmentEntry{inputs[i].filename().string(), std::nullopt, "skipped", "", collision[i]}};
      return;
    }
    per_input[i] = augment_one(inputs[i], output_dir, mode, options);
  });

  AugmentManifest manifest;
  for (auto& group : per_input) {
    for (auto& e : group) manifest.entries.push_back(std::move(e));
  }
  write_file(output_dir / "manifest.json", manifest.to_json());
  return manifest;
}

}  // namespace tabstruct
