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

#include "tabstruct/image_io.hpp"

#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace tabstruct {
namespace {

GrayImage gradient(int w, int h) {
  GrayImage img(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, static_cast<std::uint8_t>((x * 37 + y * 11) % 256));
  }
  return img;
}

TEST(ImageIo, PngRoundTripIsLossless) {
  const auto img = gradient(37, 21);
  EXPECT_EQ(decode_gray(encode_png(img)), img);
}

TEST(ImageIo, PgmRoundTripIsLossless) {
  const auto img = gradient(5, 9);
  EXPECT_EQ(decode_gray(encode_pgm(img)), img);
}

TEST(ImageIo, PgmHeaderCommentsAndMaxval) {
  const std::string text = "P5\n# a comment\n2 1\n# another\n15\n";
  std::vector<std::uint8_t> bytes(text.begin(), text.end());
  bytes.push_back(0);
  bytes.push_back(15);
  const auto img = decode_gray(bytes);
  EXPECT_EQ(img.width(), 2);
  EXPECT_EQ(img.at(0, 0), 0);
  EXPECT_EQ(img.at(1, 0), 255);
}

TEST(ImageIo, BinaryPngRendersInkBlack) {
  BinaryImage ink(3, 2);
  ink.set(1, 0, true);
  const auto img = decode_gray(encode_png(ink));
  EXPECT_EQ(img.at(1, 0), 0);
  EXPECT_EQ(img.at(0, 0), 255);
}

TEST(ImageIo, ColorPngDecodesToLuminance) {
  ColorImage c(2, 1);
  for (int ch = 0; ch < 3; ++ch) c.set(ch, 0, 0, 0);
  const auto img = decode_gray(encode_png(c));
  EXPECT_EQ(img.at(0, 0), 0);
  EXPECT_EQ(img.at(1, 0), 255);
}

TEST(ImageIo, RejectsGarbage) {
  EXPECT_THROW(decode_gray({1, 2, 3}), ImageIoError);
  auto png = encode_png(gradient(8, 8));
  png.resize(png.size() / 2);
  EXPECT_THROW(decode_gray(png), ImageIoError);
  const std::string truncated = "P5\n4 4\n255\nabc";
  EXPECT_THROW(decode_gray(std::vector<std::uint8_t>(truncated.begin(), truncated.end())), ImageIoError);
}

TEST(ImageIo, FileHelpers) {
  testing::TempDir dir;
  const auto img = gradient(4, 3);
  write_file(dir / "p.png", encode_png(img));
  EXPECT_EQ(read_gray(dir / "p.png"), img);
  EXPECT_THROW(read_gray(dir / "missing.png"), ImageIoError);
}

}  // namespace
}  // namespace tabstruct
