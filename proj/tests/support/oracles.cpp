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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace tabstruct::testing {

namespace {

using i128 = __int128;

// Between-class variance up to the positive factor 1/N^2, as the exact
// fraction num/den = (n1*S0 - n0*S1)^2 / (n0*n1).
struct Fraction {
  i128 num = 0;
  i128 den = 1;
  bool valid = false;
};

Fraction variance(const GrayImage& img, int t) {
  i128 n0 = 0, n1 = 0, s0 = 0, s1 = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      const int v = img.at(x, y);
      if (v < t) {
        ++n0;
        s0 += v;
      } else {
        ++n1;
        s1 += v;
      }
    }
  }
  if (n0 == 0 || n1 == 0) return {};
  const i128 d = n1 * s0 - n0 * s1;
  return {d * d, n0 * n1, true};
}

// a < b for valid fractions with positive denominators.
bool less(const Fraction& a, const Fraction& b) { return a.num * b.den < b.num * a.den; }
bool equal(const Fraction& a, const Fraction& b) { return a.num * b.den == b.num * a.den; }

}  // namespace

int otsu_exhaustive(const GrayImage& img) {
  std::vector<Fraction> v(256);
  Fraction best;
  for (int t = 1; t < 256; ++t) {
    v[t] = variance(img, t);
    if (v[t].valid && v[t].num > 0 && (!best.valid || less(best, v[t]))) best = v[t];
  }
  if (!best.valid) return 0;
  int lo = 1;
  while (!(v[lo].valid && equal(v[lo], best))) ++lo;
  int hi = lo;
  while (hi + 1 < 256 && v[hi + 1].valid && equal(v[hi + 1], best)) ++hi;
  return (lo + hi + 1) / 2;
}

bool maximizes_between_class_variance(const GrayImage& img, int t) {
  const Fraction at = variance(img, t);
  for (int u = 1; u < 256; ++u) {
    const Fraction other = variance(img, u);
    if (!other.valid) continue;
    if (!at.valid) {
      if (other.num > 0) return false;
      continue;
    }
    if (less(at, other)) return false;
  }
  return true;
}

BinaryImage minkowski_dilate(const BinaryImage& img, int kw, int kh) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      bool any = false;
      for (int j = 0; j < kh && !any; ++j) {
        for (int i = 0; i < kw && !any; ++i) any = img.at_or_background(x - i, y - j);
      }
      out.set(x, y, any);
    }
  }
  return out;
}

BinaryImage naive_erode(const BinaryImage& img, int kw, int kh) {
  BinaryImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      bool all = true;
      for (int j = 0; j < kh && all; ++j) {
        for (int i = 0; i < kw && all; ++i) all = img.at_or_background(x + i, y + j);
      }
      out.set(x, y, all);
    }
  }
  return out;
}

std::vector<OracleComponent> flood_fill(const BinaryImage& img, bool eight_connected) {
  const int w = img.width(), h = img.height();
  std::vector<std::vector<bool>> seen(h, std::vector<bool>(w, false));
  std::vector<OracleComponent> out;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!img.at(x, y) || seen[y][x]) continue;
      OracleComponent c{BBox(x, y, x + 1, y + 1), 0, {}};
      std::deque<std::pair<int, int>> queue{{x, y}};
      seen[y][x] = true;
      while (!queue.empty()) {
        auto [cx, cy] = queue.front();
        queue.pop_front();
        c.pixels.emplace_back(cx, cy);
        c.bbox = c.bbox.united(BBox(cx, cy, cx + 1, cy + 1));
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            if (!eight_connected && dx != 0 && dy != 0) continue;
            const int nx = cx + dx, ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h || seen[ny][nx] || !img.at(nx, ny)) continue;
            seen[ny][nx] = true;
            queue.emplace_back(nx, ny);
          }
        }
      }
      c.pixel_count = static_cast<std::int64_t>(c.pixels.size());
      std::sort(c.pixels.begin(), c.pixels.end());
      out.push_back(std::move(c));
    }
  }
  return out;
}

std::vector<double> all_pairs_distance(const BinaryImage& img, DistanceMetric metric) {
  const int w = img.width(), h = img.height();
  std::vector<double> out(static_cast<std::size_t>(w) * h, static_cast<double>(w + h));
  for (int py = 0; py < h; ++py) {
    for (int px = 0; px < w; ++px) {
      double best = std::numeric_limits<double>::infinity();
      for (int qy = 0; qy < h; ++qy) {
        for (int qx = 0; qx < w; ++qx) {
          if (!img.at(qx, qy)) continue;
          const double dx = std::abs(px - qx), dy = std::abs(py - qy);
          double d = 0;
          switch (metric) {
            case DistanceMetric::euclidean:
              d = std::sqrt(dx * dx + dy * dy);
              break;
            case DistanceMetric::cityblock:
              d = dx + dy;
              break;
            case DistanceMetric::chessboard:
              d = std::max(dx, dy);
              break;
          }
          best = std::min(best, d);
        }
      }
      if (std::isfinite(best)) out[static_cast<std::size_t>(py) * w + px] = best;
    }
  }
  return out;
}

namespace {

bool covered(std::span<const BBox> boxes, int x, int y) {
  return std::any_of(boxes.begin(), boxes.end(), [&](const BBox& b) { return b.contains(x, y); });
}

template <typename F>
void for_each_pixel(std::span<const BBox> boxes, F f) {
  if (boxes.empty()) return;
  auto frame = *bounding_union(boxes);
  for (int y = frame.y0(); y < frame.y1(); ++y) {
    for (int x = frame.x0(); x < frame.x1(); ++x) f(x, y);
  }
}

}  // namespace

std::int64_t pixel_union_area(std::span<const BBox> boxes) {
  std::int64_t n = 0;
  for_each_pixel(boxes, [&](int x, int y) { n += covered(boxes, x, y); });
  return n;
}

std::int64_t pixel_union_intersection(std::span<const BBox> a, std::span<const BBox> b) {
  std::int64_t n = 0;
  for_each_pixel(a, [&](int x, int y) { n += covered(a, x, y) && covered(b, x, y); });
  return n;
}

double pixel_iou(const BBox& a, const BBox& b) {
  const std::vector<BBox> both{a, b};
  std::int64_t inter = 0, uni = 0;
  for_each_pixel(both, [&](int x, int y) {
    const bool ia = a.contains(x, y), ib = b.contains(x, y);
    inter += ia && ib;
    uni += ia || ib;
  });
  return static_cast<double>(inter) / static_cast<double>(uni);
}

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

BinaryImage random_binary(std::mt19937_64& rng, int w, int h, double ink_prob) {
  BinaryImage img(w, h);
  std::bernoulli_distribution ink(ink_prob);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, ink(rng));
  }
  return img;
}

GrayImage random_gray(std::mt19937_64& rng, int w, int h) {
  GrayImage img(w, h);
  // A few intensity levels make plateaus and ties likely.
  const int levels = uniform(rng, 1, 6);
  std::vector<int> palette;
  for (int i = 0; i < levels; ++i) palette.push_back(uniform(rng, 0, 255));
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) img.set(x, y, static_cast<std::uint8_t>(palette[uniform(rng, 0, levels - 1)]));
  }
  return img;
}

BBox random_box(std::mt19937_64& rng, int w, int h) {
  const int x0 = uniform(rng, 0, w - 1), y0 = uniform(rng, 0, h - 1);
  return {x0, y0, uniform(rng, x0 + 1, w), uniform(rng, y0 + 1, h)};
}

}  // namespace tabstruct::testing
