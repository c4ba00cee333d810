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

#include "tabstruct/raster.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace tabstruct {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("image dimensions must be positive, got " + std::to_string(width) +
                                "x" + std::to_string(height));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// BBox

BBox::BBox(int x0, int y0, int x1, int y1) : x0_(x0), y0_(y0), x1_(x1), y1_(y1) {
  if (x1 <= x0 || y1 <= y0) {
    throw std::invalid_argument("empty bbox [" + std::to_string(x0) + "," + std::to_string(y0) +
                                "," + std::to_string(x1) + "," + std::to_string(y1) + "]");
  }
}

BBox BBox::united(const BBox& o) const {
  return {std::min(x0_, o.x0_), std::min(y0_, o.y0_), std::max(x1_, o.x1_), std::max(y1_, o.y1_)};
}

std::optional<BBox> BBox::intersected(const BBox& o) const {
  const int ix0 = std::max(x0_, o.x0_);
  const int iy0 = std::max(y0_, o.y0_);
  const int ix1 = std::min(x1_, o.x1_);
  const int iy1 = std::min(y1_, o.y1_);
  if (ix1 <= ix0 || iy1 <= iy0) return std::nullopt;
  return BBox{ix0, iy0, ix1, iy1};
}

bool reading_order_less(const BBox& a, const BBox& b) {
  if (a.y0() != b.y0()) return a.y0() < b.y0();
  if (a.x0() != b.x0()) return a.x0() < b.x0();
  if (a.y1() != b.y1()) return a.y1() < b.y1();
  return a.x1() < b.x1();
}

// ---------------------------------------------------------------------------
// Images

GrayImage::GrayImage(int width, int height, std::uint8_t fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill);
}

GrayImage::GrayImage(int width, int height, std::vector<std::uint8_t> data)
    : width_(width), height_(height), data_(std::move(data)) {
  check_dims(width, height);
  if (data_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("gray image data length does not match dimensions");
  }
}

void GrayImage::fill_rect(const BBox& box, std::uint8_t v) {
  const int x0 = std::max(box.x0(), 0), x1 = std::min(box.x1(), width_);
  const int y0 = std::max(box.y0(), 0), y1 = std::min(box.y1(), height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) data_[index(x, y)] = v;
  }
}

BinaryImage::BinaryImage(int width, int height, bool fill) : width_(width), height_(height) {
  check_dims(width, height);
  data_.assign(static_cast<std::size_t>(width) * height, fill ? 1 : 0);
}

std::size_t BinaryImage::count() const {
  return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
}

void BinaryImage::fill_rect(const BBox& box, bool v) {
  const int x0 = std::max(box.x0(), 0), x1 = std::min(box.x1(), width_);
  const int y0 = std::max(box.y0(), 0), y1 = std::min(box.y1(), height_);
  for (int y = y0; y < y1; ++y) {
    for (int x = x0; x < x1; ++x) data_[index(x, y)] = v ? 1 : 0;
  }
}

BinaryImage BinaryImage::crop(const BBox& region) const {
  if (!bounds().contains(region)) throw std::out_of_range("crop region outside image");
  BinaryImage out(region.width(), region.height());
  for (int y = 0; y < region.height(); ++y) {
    const auto* src = &data_[index(region.x0(), region.y0() + y)];
    std::copy(src, src + region.width(), &out.data_[out.index(0, y)]);
  }
  return out;
}

GrayImage BinaryImage::to_gray() const {
  std::vector<std::uint8_t> px(data_.size());
  std::transform(data_.begin(), data_.end(), px.begin(),
                 [](std::uint8_t v) { return v ? std::uint8_t{0} : std::uint8_t{255}; });
  return GrayImage(width_, height_, std::move(px));
}

DistanceField::DistanceField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
  check_dims(width, height);
  if (values_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("distance field length does not match dimensions");
  }
}

// ---------------------------------------------------------------------------
// Binarization

int otsu_threshold(const GrayImage& img) {
  std::array<std::int64_t, 256> hist{};
  for (auto v : img.data()) ++hist[v];

  std::int64_t total_n = 0, total_s = 0;
  for (int i = 0; i < 256; ++i) {
    total_n += hist[i];
    total_s += hist[i] * i;
  }

  // Ink class = intensities < t. Between-class variance up to a constant
  // factor: (n0*S1 - n1*S0)^2 / (n0*n1).
  double best = 0.0;
  int best_lo = 0, best_hi = 0;
  std::int64_t n0 = 0, s0 = 0;
  for (int t = 1; t < 256; ++t) {
    n0 += hist[t - 1];
    s0 += hist[t - 1] * (t - 1);
    const std::int64_t n1 = total_n - n0;
    const std::int64_t s1 = total_s - s0;
    if (n0 == 0 || n1 == 0) continue;
    const double diff = static_cast<double>(n0) * static_cast<double>(s1) -
                        static_cast<double>(n1) * static_cast<double>(s0);
    const double var = diff * diff / (static_cast<double>(n0) * static_cast<double>(n1));
    if (var > best) {
      best = var;
      best_lo = best_hi = t;
    } else if (var == best && best > 0.0 && best_hi == t - 1) {
      best_hi = t;
    }
  }
  if (best == 0.0) return 0;
  // Middle of the first maximal plateau.
  return (best_lo + best_hi + 1) / 2;
}

BinaryImage binarize(const GrayImage& img, BinarizeMethod method) {
  int t = 0;
  if (method.kind == BinarizeMethod::Kind::otsu) {
    t = otsu_threshold(img);
  } else {
    if (method.threshold < 0 || method.threshold > 255) {
      throw std::invalid_argument("fixed threshold must lie in 0..255");
    }
    t = method.threshold;
  }
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) out.set(x, y, img.at(x, y) < t);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Morphology. Both operators are separable over a box kernel.

namespace {

void check_kernel(int kw, int kh, int iterations) {
  if (kw < 1 || kh < 1) throw std::invalid_argument("kernel dimensions must be >= 1");
  if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
}

BinaryImage dilate_once(const BinaryImage& img, int kw, int kh) {
  const int w = img.width(), h = img.height();
  BinaryImage horiz(w, h);
  for (int y = 0; y < h; ++y) {
    int last_ink = std::numeric_limits<int>::min() / 2;
    for (int x = 0; x < w; ++x) {
      if (img.at(x, y)) last_ink = x;
      if (x - last_ink < kw) horiz.set(x, y, true);
    }
  }
  BinaryImage out(w, h);
  for (int x = 0; x < w; ++x) {
    int last_ink = std::numeric_limits<int>::min() / 2;
    for (int y = 0; y < h; ++y) {
      if (horiz.at(x, y)) last_ink = y;
      if (y - last_ink < kh) out.set(x, y, true);
    }
  }
  return out;
}

BinaryImage erode_once(const BinaryImage& img, int kw, int kh) {
  const int w = img.width(), h = img.height();
  // Pixel survives when the kw run to its right (inclusive) is all ink.
  BinaryImage horiz(w, h);
  for (int y = 0; y < h; ++y) {
    int run = 0;
    for (int x = w - 1; x >= 0; --x) {
      run = img.at(x, y) ? run + 1 : 0;
      if (run >= kw) horiz.set(x, y, true);
    }
  }
  BinaryImage out(w, h);
  for (int x = 0; x < w; ++x) {
    int run = 0;
    for (int y = h - 1; y >= 0; --y) {
      run = horiz.at(x, y) ? run + 1 : 0;
      if (run >= kh) out.set(x, y, true);
    }
  }
  return out;
}

}  // namespace

BinaryImage dilate_binary(const BinaryImage& img, int kw, int kh, int iterations) {
  check_kernel(kw, kh, iterations);
  BinaryImage cur = img;
  for (int i = 0; i < iterations; ++i) cur = dilate_once(cur, kw, kh);
  return cur;
}

BinaryImage erode_binary(const BinaryImage& img, int kw, int kh, int iterations) {
  check_kernel(kw, kh, iterations);
  BinaryImage cur = img;
  for (int i = 0; i < iterations; ++i) cur = erode_once(cur, kw, kh);
  return cur;
}

// ---------------------------------------------------------------------------
// Connected components

std::vector<Component> label_components(const BinaryImage& img, Connectivity connectivity,
                                        std::vector<int>& labels) {
  const int w = img.width(), h = img.height();
  labels.assign(static_cast<std::size_t>(w) * h, -1);
  std::vector<Component> comps;
  std::vector<std::pair<int, int>> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::size_t idx = static_cast<std::size_t>(y) * w + x;
      if (!img.at(x, y) || labels[idx] >= 0) continue;

      const int label = static_cast<int>(comps.size());
      int bx0 = x, by0 = y, bx1 = x + 1, by1 = y + 1;
      std::int64_t n = 0;
      labels[idx] = label;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        auto [cx, cy] = stack.back();
        stack.pop_back();
        ++n;
        bx0 = std::min(bx0, cx);
        by0 = std::min(by0, cy);
        bx1 = std::max(bx1, cx + 1);
        by1 = std::max(by1, cy + 1);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (connectivity == Connectivity::four && dx != 0 && dy != 0) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (!img.at_or_background(nx, ny)) continue;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (labels[nidx] >= 0) continue;
            labels[nidx] = label;
            stack.emplace_back(nx, ny);
          }
        }
      }
      comps.push_back(Component{BBox{bx0, by0, bx1, by1}, n, label});
    }
  }
  return comps;
}

std::vector<Component> connected_components(const BinaryImage& img, Connectivity connectivity) {
  std::vector<int> labels;
  return label_components(img, connectivity, labels);
}

// ---------------------------------------------------------------------------
// Distance transforms

namespace {

// Exact 1-D squared Euclidean distance (lower envelope of parabolas).
void edt_1d(std::span<const double> f, std::span<double> d, std::vector<int>& v,
            std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  constexpr double inf = std::numeric_limits<double>::infinity();
  v.assign(n, 0);
  z.assign(n + 1, 0.0);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == inf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -inf;
      z[1] = inf;
      continue;
    }
    auto intersect = [&](int p) {
      return ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * q - 2.0 * p);
    };
    double s = intersect(v[k]);
    while (s <= z[k]) s = intersect(v[--k]);
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = inf;
  }
  if (k < 0) {
    std::fill(d.begin(), d.end(), inf);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const double dq = q - v[j];
    d[q] = dq * dq + f[v[j]];
  }
}

std::vector<double> euclidean_dt(const BinaryImage& img) {
  const int w = img.width(), h = img.height();
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> grid(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) grid[static_cast<std::size_t>(y) * w + x] = img.at(x, y) ? 0.0 : inf;
  }
  std::vector<int> v;
  std::vector<double> z;
  std::vector<double> f(std::max(w, h)), d(std::max(w, h));
  for (int x = 0; x < w; ++x) {
    for (int y = 0; y < h; ++y) f[y] = grid[static_cast<std::size_t>(y) * w + x];
    edt_1d(std::span(f).first(h), std::span(d).first(h), v, z);
    for (int y = 0; y < h; ++y) grid[static_cast<std::size_t>(y) * w + x] = d[y];
  }
  for (int y = 0; y < h; ++y) {
    auto row = std::span(grid).subspan(static_cast<std::size_t>(y) * w, w);
    std::copy(row.begin(), row.end(), f.begin());
    edt_1d(std::span(f).first(w), std::span(d).first(w), v, z);
    for (int x = 0; x < w; ++x) row[x] = std::sqrt(d[x]);
  }
  return grid;
}

// Two-pass raster scan; exact for L1 with the 4-neighbourhood and for L-inf
// with the 8-neighbourhood (both metrics are path metrics on the grid).
std::vector<double> chamfer_dt(const BinaryImage& img, bool diagonal) {
  const int w = img.width(), h = img.height();
  const int big = w + h + 1;
  std::vector<int> d(static_cast<std::size_t>(w) * h);
  auto at = [&](int x, int y) -> int& { return d[static_cast<std::size_t>(y) * w + x]; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) at(x, y) = img.at(x, y) ? 0 : big;
  }
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int& c = at(x, y);
      if (x > 0) c = std::min(c, at(x - 1, y) + 1);
      if (y > 0) c = std::min(c, at(x, y - 1) + 1);
      if (diagonal && y > 0) {
        if (x > 0) c = std::min(c, at(x - 1, y - 1) + 1);
        if (x + 1 < w) c = std::min(c, at(x + 1, y - 1) + 1);
      }
    }
  }
  for (int y = h - 1; y >= 0; --y) {
    for (int x = w - 1; x >= 0; --x) {
      int& c = at(x, y);
      if (x + 1 < w) c = std::min(c, at(x + 1, y) + 1);
      if (y + 1 < h) c = std::min(c, at(x, y + 1) + 1);
      if (diagonal && y + 1 < h) {
        if (x + 1 < w) c = std::min(c, at(x + 1, y + 1) + 1);
        if (x > 0) c = std::min(c, at(x - 1, y + 1) + 1);
      }
    }
  }
  return {d.begin(), d.end()};
}

}  // namespace

DistanceField distance_transform(const BinaryImage& img, DistanceMetric metric) {
  const int w = img.width(), h = img.height();
  if (img.count() == 0) {
    return DistanceField(w, h, std::vector<double>(static_cast<std::size_t>(w) * h, double(w + h)));
  }
  switch (metric) {
    case DistanceMetric::euclidean:
      return DistanceField(w, h, euclidean_dt(img));
    case DistanceMetric::cityblock:
      return DistanceField(w, h, chamfer_dt(img, false));
    case DistanceMetric::chessboard:
      return DistanceField(w, h, chamfer_dt(img, true));
  }
  throw std::invalid_argument("unknown distance metric");
}

// ---------------------------------------------------------------------------
// Text detection

namespace {

int interval_gap(int a0, int a1, int b0, int b1) {
  return std::max(0, std::max(a0, b0) - std::min(a1, b1));
}

int interval_overlap(int a0, int a1, int b0, int b1) {
  return std::max(0, std::min(a1, b1) - std::max(a0, b0));
}

}  // namespace

bool should_merge_text_boxes(const BBox& a, const BBox& b, const TextDetectionParams& params) {
  if (interval_gap(a.x0(), a.x1(), b.x0(), b.x1()) > params.merge_gap_x) return false;
  const int overlap = interval_overlap(a.y0(), a.y1(), b.y0(), b.y1());
  if (2 * overlap >= std::min(a.height(), b.height())) return true;
  return interval_gap(a.y0(), a.y1(), b.y0(), b.y1()) <= params.merge_gap_y;
}

std::vector<BBox> text_regions(const BinaryImage& img, const TextDetectionParams& params) {
  if (params.min_area < 1) throw std::invalid_argument("min_area must be >= 1");
  std::vector<BBox> boxes;
  for (const auto& c : connected_components(img, Connectivity::eight)) {
    if (c.pixel_count >= params.min_area) boxes.push_back(c.bbox);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < boxes.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < boxes.size(); ++j) {
        if (should_merge_text_boxes(boxes[i], boxes[j], params)) {
          boxes[i] = boxes[i].united(boxes[j]);
          boxes.erase(boxes.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }
  std::sort(boxes.begin(), boxes.end(), reading_order_less);
  return boxes;
}

// ---------------------------------------------------------------------------
// Box geometry

double iou(const BBox& a, const BBox& b) {
  const auto inter = a.intersected(b);
  if (!inter) return 0.0;
  const auto i = inter->area();
  return static_cast<double>(i) / static_cast<double>(a.area() + b.area() - i);
}

std::optional<BBox> bounding_union(std::span<const BBox> boxes) {
  if (boxes.empty()) return std::nullopt;
  BBox out = boxes.front();
  for (const auto& b : boxes.subspan(1)) out = out.united(b);
  return out;
}

namespace {

std::int64_t compressed_area(std::span<const BBox> a, std::span<const BBox> b, bool need_both) {
  std::vector<int> xs, ys;
  for (auto set : {a, b}) {
    for (const auto& r : set) {
      xs.push_back(r.x0());
      xs.push_back(r.x1());
      ys.push_back(r.y0());
      ys.push_back(r.y1());
    }
  }
  if (xs.empty()) return 0;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  const std::size_t nx = xs.size() - 1, ny = ys.size() - 1;
  auto mark = [&](std::span<const BBox> set) {
    std::vector<std::uint8_t> cover(nx * ny, 0);
    for (const auto& r : set) {
      const auto ix0 = std::lower_bound(xs.begin(), xs.end(), r.x0()) - xs.begin();
      const auto ix1 = std::lower_bound(xs.begin(), xs.end(), r.x1()) - xs.begin();
      const auto iy0 = std::lower_bound(ys.begin(), ys.end(), r.y0()) - ys.begin();
      const auto iy1 = std::lower_bound(ys.begin(), ys.end(), r.y1()) - ys.begin();
      for (auto iy = iy0; iy < iy1; ++iy) {
        for (auto ix = ix0; ix < ix1; ++ix) cover[static_cast<std::size_t>(iy) * nx + ix] = 1;
      }
    }
    return cover;
  };
  const auto ca = mark(a);
  const auto cb = need_both ? mark(b) : ca;

  std::int64_t area = 0;
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const std::size_t k = iy * nx + ix;
      if (ca[k] && cb[k]) {
        area += std::int64_t{xs[ix + 1] - xs[ix]} * (ys[iy + 1] - ys[iy]);
      }
    }
  }
  return area;
}

}  // namespace

std::int64_t union_area(std::span<const BBox> boxes) { return compressed_area(boxes, {}, false); }

std::int64_t union_intersection_area(std::span<const BBox> a, std::span<const BBox> b) {
  if (a.empty() || b.empty()) return 0;
  return compressed_area(a, b, true);
}

}  // namespace tabstruct
