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

// Brute-force reference implementations. Deliberately naive: they share no
// code with the library and are only fast enough for small inputs.

#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "tabstruct/raster.hpp"

namespace tabstruct::testing {

/// Otsu threshold by exhaustive scan with exact integer arithmetic:
/// midpoint of the first run of thresholds reaching the maximal
/// between-class variance; 0 when no threshold splits the pixels.
int otsu_exhaustive(const GrayImage& img);

/// True when no threshold in 1..255 gives strictly larger between-class
/// variance than `t` (exact arithmetic).
bool maximizes_between_class_variance(const GrayImage& img, int t);

/// out(x, y) = OR of in(x - i, y - j) over the kernel cells (i, j).
BinaryImage minkowski_dilate(const BinaryImage& img, int kw, int kh);
/// out(x, y) = AND of in(x + i, y + j); outside the image is background.
BinaryImage naive_erode(const BinaryImage& img, int kw, int kh);

struct OracleComponent {
  BBox bbox;
  std::int64_t pixel_count;
  std::vector<std::pair<int, int>> pixels;
};

/// Breadth-first flood fill from each unvisited ink pixel in raster order.
std::vector<OracleComponent> flood_fill(const BinaryImage& img, bool eight_connected);

/// min over ink pixels q of metric(p, q) for every p; w + h without ink.
std::vector<double> all_pairs_distance(const BinaryImage& img, DistanceMetric metric);

/// Pixel-membership counts over the integer grid.
std::int64_t pixel_union_area(std::span<const BBox> boxes);
std::int64_t pixel_union_intersection(std::span<const BBox> a, std::span<const BBox> b);
double pixel_iou(const BBox& a, const BBox& b);

// --- generators ------------------------------------------------------------

BinaryImage random_binary(std::mt19937_64& rng, int w, int h, double ink_prob);
GrayImage random_gray(std::mt19937_64& rng, int w, int h);
/// Random box inside [0, w) x [0, h).
BBox random_box(std::mt19937_64& rng, int w, int h);
int uniform(std::mt19937_64& rng, int lo, int hi);

}  // namespace tabstruct::testing
