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

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstring>
#include <fstream>
#include <iterator>

namespace tabstruct {

ColorImage::ColorImage(int width, int height) : width_(width), height_(height) {
  if (width < 1 || height < 1) throw std::invalid_argument("image dimensions must be positive");
  for (auto& p : planes_) p.assign(static_cast<std::size_t>(width) * height, 255);
}

namespace {

constexpr std::uint8_t kPngSignature[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};

GrayImage decode_png(const std::vector<std::uint8_t>& bytes) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw ImageIoError(std::string("png: ") + image.message);
  }
  image.format = PNG_FORMAT_GRAY;
  if (image.width < 1 || image.height < 1 || image.width > (1u << 16) || image.height > (1u << 16)) {
    png_image_free(&image);
    throw ImageIoError("png: unsupported dimensions");
  }
  std::vector<std::uint8_t> data(PNG_IMAGE_SIZE(image));
  // Composite any alpha onto white paper.
  png_color white{255, 255, 255};
  if (!png_image_finish_read(&image, &white, data.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw ImageIoError("png: " + msg);
  }
  return GrayImage(static_cast<int>(image.width), static_cast<int>(image.height), std::move(data));
}

// Binary PGM (P5), maxval <= 255.
GrayImage decode_pgm(const std::vector<std::uint8_t>& bytes) {
  std::size_t pos = 2;
  auto next_int = [&]() {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) throw ImageIoError("pgm: bad header");
    long v = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      v = v * 10 + (bytes[pos++] - '0');
      if (v > (1L << 24)) throw ImageIoError("pgm: header value too large");
    }
    return static_cast<int>(v);
  };
  const int w = next_int();
  const int h = next_int();
  const int maxval = next_int();
  if (w < 1 || h < 1) throw ImageIoError("pgm: empty image");
  if (maxval < 1 || maxval > 255) throw ImageIoError("pgm: only 8-bit maxval is supported");
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) throw ImageIoError("pgm: bad header");
  ++pos;
  const std::size_t n = static_cast<std::size_t>(w) * h;
  if (bytes.size() - pos < n) throw ImageIoError("pgm: truncated pixel data");
  std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(pos),
                                 bytes.begin() + static_cast<std::ptrdiff_t>(pos + n));
  if (maxval != 255) {
    for (auto& v : data) v = static_cast<std::uint8_t>((std::min<int>(v, maxval) * 255 + maxval / 2) / maxval);
  }
  return GrayImage(w, h, std::move(data));
}

std::vector<std::uint8_t> encode_png_buffer(int w, int h, png_uint_32 format,
                                            const std::uint8_t* pixels) {
  png_image image;
  std::memset(&image, 0, sizeof(image));
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(w);
  image.height = static_cast<png_uint_32>(h);
  image.format = format;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, pixels, 0, nullptr)) {
    throw ImageIoError(std::string("png: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, pixels, 0, nullptr)) {
    throw ImageIoError(std::string("png: ") + image.message);
  }
  out.resize(size);
  return out;
}

}  // namespace

GrayImage decode_gray(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() >= 8 && std::memcmp(bytes.data(), kPngSignature, 8) == 0) return decode_png(bytes);
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '5') return decode_pgm(bytes);
  throw ImageIoError("unrecognized image format (expected PNG or binary PGM)");
}

GrayImage read_gray(const std::filesystem::path& path) {
  try {
    return decode_gray(read_file(path));
  } catch (const ImageIoError& e) {
    throw ImageIoError(path.string() + ": " + e.what());
  }
}

std::vector<std::uint8_t> encode_png(const GrayImage& img) {
  return encode_png_buffer(img.width(), img.height(), PNG_FORMAT_GRAY, img.data().data());
}

std::vector<std::uint8_t> encode_png(const ColorImage& img) {
  const int w = img.width(), h = img.height();
  std::vector<std::uint8_t> rgb(static_cast<std::size_t>(w) * h * 3);
  std::size_t k = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) rgb[k++] = img.at(c, x, y);
    }
  }
  return encode_png_buffer(w, h, PNG_FORMAT_RGB, rgb.data());
}

std::vector<std::uint8_t> encode_png(const BinaryImage& img) { return encode_png(img.to_gray()); }

std::vector<std::uint8_t> encode_pgm(const GrayImage& img) {
  const std::string header =
      "P5\n" + std::to_string(img.width()) + " " + std::to_string(img.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  const auto d = img.data();
  out.insert(out.end(), d.begin(), d.end());
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ImageIoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::filesystem::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ImageIoError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ImageIoError("short write to " + path.string());
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  write_file(path, std::vector<std::uint8_t>(text.begin(), text.end()));
}

}  // namespace tabstruct
