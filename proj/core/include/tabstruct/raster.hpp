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
#include <optional>
#include <span>
#include <vector>

namespace tabstruct {

/// Half-open pixel rectangle [x0, x1) x [y0, y1). Empty boxes cannot be built.
class BBox {
 public:
  BBox(int x0, int y0, int x1, int y1);

  int x0() const { return x0_; }
  int y0() const { return y0_; }
  int x1() const { return x1_; }
  int y1() const { return y1_; }
  int width() const { return x1_ - x0_; }
  int height() const { return y1_ - y0_; }
  std::int64_t area() const { return std::int64_t{width()} * height(); }

  /// Center in doubled coordinates (x0 + x1, y0 + y1), exact on integers.
  int center2_x() const { return x0_ + x1_; }
  int center2_y() const { return y0_ + y1_; }

  bool contains(int x, int y) const { return x >= x0_ && x < x1_ && y >= y0_ && y < y1_; }
  bool contains(const BBox& other) const {
    return other.x0_ >= x0_ && other.y0_ >= y0_ && other.x1_ <= x1_ && other.y1_ <= y1_;
  }

  BBox translated(int dx, int dy) const { return {x0_ + dx, y0_ + dy, x1_ + dx, y1_ + dy}; }
  BBox united(const BBox& other) const;
  std::optional<BBox> intersected(const BBox& other) const;

  friend bool operator==(const BBox&, const BBox&) = default;

 private:
  int x0_, y0_, x1_, y1_;
};

/// Reading order: top-to-bottom, then left-to-right.
bool reading_order_less(const BBox& a, const BBox& b);

/// 8-bit grayscale raster, 0 = black ink, 255 = white paper.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 255);
  GrayImage(int width, int height, std::vector<std::uint8_t> data);

  int width() const { return width_; }
  int height() const { return height_; }
  std::uint8_t at(int x, int y) const { return data_[index(x, y)]; }
  void set(int x, int y, std::uint8_t v) { data_[index(x, y)] = v; }
  std::span<const std::uint8_t> data() const { return data_; }

  void fill_rect(const BBox& box, std::uint8_t v);

  friend bool operator==(const GrayImage&, const GrayImage&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

/// Boolean raster; true = ink (foreground).
class BinaryImage {
 public:
  BinaryImage(int width, int height, bool fill = false);

  int width() const { return width_; }
  int height() const { return height_; }
  bool at(int x, int y) const { return data_[index(x, y)] != 0; }
  /// Out-of-bounds reads are background.
  bool at_or_background(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_ && at(x, y);
  }
  void set(int x, int y, bool v) { data_[index(x, y)] = v ? 1 : 0; }
  std::size_t count() const;
  BBox bounds() const { return {0, 0, width_, height_}; }

  void fill_rect(const BBox& box, bool v);
  /// Copy of the pixels inside `region` (which must lie within the image).
  BinaryImage crop(const BBox& region) const;
  /// Ink rendered as 0, background as 255.
  GrayImage to_gray() const;

  friend bool operator==(const BinaryImage&, const BinaryImage&) = default;

 private:
  std::size_t index(int x, int y) const { return static_cast<std::size_t>(y) * width_ + x; }

  int width_;
  int height_;
  std::vector<std::uint8_t> data_;
};

struct Component {
  BBox bbox;
  std::int64_t pixel_count;
  int label;
};

enum class DistanceMetric { euclidean, cityblock, chessboard };

/// Per-pixel distance to the nearest ink pixel.
class DistanceField {
 public:
  DistanceField(int width, int height, std::vector<double> values);

  int width() const { return width_; }
  int height() const { return height_; }
  double at(int x, int y) const { return values_[static_cast<std::size_t>(y) * width_ + x]; }
  std::span<const double> values() const { return values_; }

 private:
  int width_;
  int height_;
  std::vector<double> values_;
};

struct BinarizeMethod {
  enum class Kind { otsu, fixed } kind = Kind::otsu;
  int threshold = 128;

  static BinarizeMethod otsu() { return {}; }
  static BinarizeMethod fixed(int t) { return {Kind::fixed, t}; }
};

/// Otsu threshold T such that intensity < T is ink. Returns 0 (no ink) when
/// the image is uniform.
int otsu_threshold(const GrayImage& img);

BinaryImage binarize(const GrayImage& img, BinarizeMethod method = BinarizeMethod::otsu());

/// Dilation by the kw x kh box anchored at its top-left cell, repeated
/// `iterations` times. Pixels pushed past the border are dropped.
BinaryImage dilate_binary(const BinaryImage& img, int kw, int kh, int iterations = 1);

/// Erosion by the same top-left anchored box; outside the image counts as
/// background. erode then dilate with equal kernels is a morphological opening.
BinaryImage erode_binary(const BinaryImage& img, int kw, int kh, int iterations = 1);

enum class Connectivity { four = 4, eight = 8 };

/// Maximal connected ink sets. Labels are 0..n-1 in raster order of each
/// component's first pixel.
std::vector<Component> connected_components(const BinaryImage& img,
                                            Connectivity connectivity = Connectivity::eight);

/// Same as connected_components, additionally filling `labels` (size w*h)
/// with the component label of every pixel, or -1 on background.
std::vector<Component> label_components(const BinaryImage& img, Connectivity connectivity,
                                        std::vector<int>& labels);

/// Exact distance transform. With no ink, every value is width + height.
DistanceField distance_transform(const BinaryImage& img, DistanceMetric metric);

struct TextDetectionParams {
  std::int64_t min_area = 4;
  int merge_gap_x = 8;
  int merge_gap_y = 2;
};

/// Connected-component text detection: components of at least min_area
/// pixels, merged into word/line boxes to a fixed point, sorted in reading
/// order.
std::vector<BBox> text_regions(const BinaryImage& img, const TextDetectionParams& params = {});

/// Box merge predicate used by text_regions.
bool should_merge_text_boxes(const BBox& a, const BBox& b, const TextDetectionParams& params);

double iou(const BBox& a, const BBox& b);

/// Tight box of the union of `boxes`; nullopt when empty.
std::optional<BBox> bounding_union(std::span<const BBox> boxes);

/// Exact area of the union of rectangles (coordinate compression).
std::int64_t union_area(std::span<const BBox> boxes);

/// Exact area of (union of a) intersected with (union of b).
std::int64_t union_intersection_area(std::span<const BBox> a, std::span<const BBox> b);

}  // namespace tabstruct
