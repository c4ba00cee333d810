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
#include <stdexcept>
#include <string>
#include <vector>

#include "tabstruct/raster.hpp"

namespace tabstruct {

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Three 8-bit planes of equal size, stored planar.
class ColorImage {
 public:
  ColorImage(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int channel, int x, int y) const { return planes_[channel][index(x, y)]; }
  void set(int channel, int x, int y, std::uint8_t v) { planes_[channel][index(x, y)] = v; }

  friend bool operator==(const ColorImage&, const ColorImage&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<std::uint8_t> planes_[3];
};

/// Decodes PNG (any colour type, converted to 8-bit luminance) or binary PGM.
GrayImage decode_gray(const std::vector<std::uint8_t>& bytes);
GrayImage read_gray(const std::filesystem::path& path);

std::vector<std::uint8_t> encode_png(const GrayImage& img);
/// RGB PNG with channel 0 in R, 1 in G, 2 in B.
std::vector<std::uint8_t> encode_png(const ColorImage& img);
/// Ink = 0, background = 255.
std::vector<std::uint8_t> encode_png(const BinaryImage& img);
std::vector<std::uint8_t> encode_pgm(const GrayImage& img);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes);
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace tabstruct
