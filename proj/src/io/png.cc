/* Copyright 2026 The cam-forge Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "camforge/io/png.h"

#include <png.h>

#include <csetjmp>
#include <cstring>
#include <vector>

#include "camforge/io/npy.h"

namespace camforge::io {
namespace {

struct ReadCursor {
  const unsigned char* data;
  std::size_t size;
  std::size_t pos;
};

void ReadFromMemory(png_structp png, png_bytep out, png_size_t n) {
  auto* cur = static_cast<ReadCursor*>(png_get_io_ptr(png));
  if (cur->pos + n > cur->size) png_error(png, "unexpected end of data");
  std::memcpy(out, cur->data + cur->pos, n);
  cur->pos += n;
}

void WriteToString(png_structp png, png_bytep data, png_size_t n) {
  auto* out = static_cast<std::string*>(png_get_io_ptr(png));
  out->append(reinterpret_cast<const char*>(data), n);
}

void FlushNothing(png_structp) {}

void SilentWarning(png_structp, png_const_charp) {}

// Errors surface as exceptions, so libpng should not print them.
[[noreturn]] void SilentError(png_structp png, png_const_charp) {
  png_longjmp(png, 1);
}

// Returns false on a libpng error. `rows` and `out` must outlive the call
// and are only touched through pointers, so the longjmp skips no
// destructors.
bool EncodeRaw(int width, int height, int color_type,
               const std::vector<png_bytep>& rows, std::string* out) {
  png_structp png =
      png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                              SilentError, SilentWarning);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, WriteToString, FlushNothing);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), 8, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, const_cast<png_bytepp>(rows.data()));
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

struct Decoded {
  int width = 0;
  int height = 0;
  int color_type = 0;
  int bit_depth = 0;
  std::vector<unsigned char> pixels;
};

enum class DecodeStatus { kOk, kBad };

DecodeStatus DecodeRaw(std::string_view bytes, Decoded* d) {
  if (bytes.size() < 8 ||
      png_sig_cmp(reinterpret_cast<png_const_bytep>(bytes.data()), 0, 8) != 0) {
    return DecodeStatus::kBad;
  }
  ReadCursor cur{reinterpret_cast<const unsigned char*>(bytes.data()),
                 bytes.size(), 0};
  std::vector<png_bytep> rows;
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           SilentError, SilentWarning);
  if (!png) return DecodeStatus::kBad;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    return DecodeStatus::kBad;
  }
  png_set_read_fn(png, &cur, ReadFromMemory);
  png_read_info(png, info);
  d->width = static_cast<int>(png_get_image_width(png, info));
  d->height = static_cast<int>(png_get_image_height(png, info));
  d->color_type = png_get_color_type(png, info);
  d->bit_depth = png_get_bit_depth(png, info);
  const std::size_t rowbytes = png_get_rowbytes(png, info);
  d->pixels.resize(rowbytes * d->height);
  rows.resize(d->height);
  for (int y = 0; y < d->height; ++y) rows[y] = d->pixels.data() + y * rowbytes;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);
  return DecodeStatus::kOk;
}

}  // namespace

std::string EncodeMaskPng(const PseudoMask& mask) {
  std::vector<unsigned char> buf(mask.labels().values().begin(),
                                 mask.labels().values().end());
  std::vector<png_bytep> rows(mask.height());
  for (int y = 0; y < mask.height(); ++y) {
    rows[y] = buf.data() + static_cast<std::size_t>(y) * mask.width();
  }
  std::string out;
  if (!EncodeRaw(mask.width(), mask.height(), PNG_COLOR_TYPE_GRAY, rows,
                 &out)) {
    throw Error(ErrorCode::kBadPng, "png: failed to encode mask");
  }
  return out;
}

PseudoMask DecodeMaskPng(std::string_view bytes) {
  Decoded d;
  if (DecodeRaw(bytes, &d) != DecodeStatus::kOk) {
    throw Error(ErrorCode::kBadPng, "png: undecodable data");
  }
  if (d.color_type != PNG_COLOR_TYPE_GRAY || d.bit_depth != 8) {
    throw Error(ErrorCode::kDepthMismatch,
                "png: label masks must be 8-bit grayscale");
  }
  return PseudoMask(Grid<std::uint8_t>(
      d.height, d.width,
      std::vector<std::uint8_t>(d.pixels.begin(), d.pixels.end())));
}

void WriteMaskPng(const std::filesystem::path& path, const PseudoMask& mask) {
  WriteFileBytes(path, EncodeMaskPng(mask));
}

PseudoMask ReadMaskPng(const std::filesystem::path& path) {
  return DecodeMaskPng(ReadFileBytes(path));
}

void WriteColorMaskPng(const std::filesystem::path& path,
                       const PseudoMask& mask) {
  RgbImage img(mask.height(), mask.width());
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      const auto rgb = VocColor(mask.at(y, x));
      for (int c = 0; c < 3; ++c) img.at(y, x, c) = rgb[c];
    }
  }
  WriteRgbPng(path, img);
}

std::string EncodeRgbPng(const RgbImage& image) {
  std::vector<unsigned char> buf(image.data.begin(), image.data.end());
  std::vector<png_bytep> rows(image.height);
  for (int y = 0; y < image.height; ++y) {
    rows[y] = buf.data() + static_cast<std::size_t>(y) * image.width * 3;
  }
  std::string out;
  if (!EncodeRaw(image.width, image.height, PNG_COLOR_TYPE_RGB, rows, &out)) {
    throw Error(ErrorCode::kBadPng, "png: failed to encode image");
  }
  return out;
}

RgbImage DecodeRgbPng(std::string_view bytes) {
  Decoded d;
  if (DecodeRaw(bytes, &d) != DecodeStatus::kOk) {
    throw Error(ErrorCode::kBadPng, "png: undecodable data");
  }
  if (d.color_type != PNG_COLOR_TYPE_RGB || d.bit_depth != 8) {
    throw Error(ErrorCode::kDepthMismatch, "png: expected 8-bit RGB");
  }
  RgbImage img(d.height, d.width);
  img.data.assign(d.pixels.begin(), d.pixels.end());
  return img;
}

void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image) {
  WriteFileBytes(path, EncodeRgbPng(image));
}

RgbImage ReadRgbPng(const std::filesystem::path& path) {
  return DecodeRgbPng(ReadFileBytes(path));
}

}  // namespace camforge::io
