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
#include "camforge/io/npy.h"

#include <bit>
#include <cctype>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace camforge::io {
namespace {

static_assert(std::endian::native == std::endian::little,
              "NPY payloads are written in host byte order");

constexpr char kMagic[] = "\x93NUMPY";
constexpr std::size_t kMagicLen = 6;
constexpr std::size_t kPreludeLen = 10;  // magic + version + header length

[[noreturn]] void Fail(ErrorCode code, const std::string& what) {
  throw Error(code, "npy: " + what);
}

std::size_t ItemSize(NpyDtype d) { return d == NpyDtype::kFloat32 ? 4 : 8; }

// Value text following `'key':` in the header dict.
std::string_view DictValue(std::string_view header, std::string_view key) {
  const std::string quoted = "'" + std::string(key) + "'";
  const auto k = header.find(quoted);
  if (k == std::string_view::npos) {
    Fail(ErrorCode::kHeaderParse, "header lacks " + quoted);
  }
  auto pos = header.find(':', k + quoted.size());
  if (pos == std::string_view::npos) Fail(ErrorCode::kHeaderParse, "bad dict");
  ++pos;
  while (pos < header.size() && header[pos] == ' ') ++pos;
  std::size_t end = pos;
  if (pos < header.size() && header[pos] == '(') {
    end = header.find(')', pos);
    if (end == std::string_view::npos) {
      Fail(ErrorCode::kHeaderParse, "unterminated shape tuple");
    }
    ++end;
  } else if (pos < header.size() && header[pos] == '\'') {
    end = header.find('\'', pos + 1);
    if (end == std::string_view::npos) {
      Fail(ErrorCode::kHeaderParse, "unterminated string");
    }
    ++end;
  } else {
    while (end < header.size() && header[end] != ',' && header[end] != '}') {
      ++end;
    }
  }
  return header.substr(pos, end - pos);
}

std::vector<std::size_t> ParseShape(std::string_view tuple) {
  if (tuple.size() < 2 || tuple.front() != '(' || tuple.back() != ')') {
    Fail(ErrorCode::kHeaderParse, "shape is not a tuple");
  }
  std::vector<std::size_t> shape;
  std::size_t i = 1;
  while (i + 1 < tuple.size()) {
    while (i + 1 < tuple.size() && (tuple[i] == ' ' || tuple[i] == ',')) ++i;
    if (i + 1 >= tuple.size()) break;
    if (!std::isdigit(static_cast<unsigned char>(tuple[i]))) {
      Fail(ErrorCode::kHeaderParse, "non-numeric shape entry");
    }
    std::size_t v = 0;
    while (i + 1 < tuple.size() &&
           std::isdigit(static_cast<unsigned char>(tuple[i]))) {
      v = v * 10 + static_cast<std::size_t>(tuple[i] - '0');
      ++i;
    }
    shape.push_back(v);
  }
  return shape;
}

}  // namespace

std::size_t NpyArray::element_count() const {
  std::size_t n = 1;
  for (auto d : shape) n *= d;
  return n;
}

std::string EncodeNpy(const NpyArray& array) {
  if (array.values.size() != array.element_count()) {
    Fail(ErrorCode::kDimensionMismatch, "value count does not match shape");
  }
  std::ostringstream dict;
  dict << "{'descr': '" << (array.dtype == NpyDtype::kFloat32 ? "<f4" : "<f8")
       << "', 'fortran_order': False, 'shape': (";
  for (std::size_t i = 0; i < array.shape.size(); ++i) {
    if (i) dict << ", ";
    dict << array.shape[i];
  }
  if (array.shape.size() == 1) dict << ",";
  dict << "), }";
  std::string header = dict.str();
  // Pad so the payload starts on a 64-byte boundary; the header ends in \n.
  const std::size_t unpadded = kPreludeLen + header.size() + 1;
  header.append((64 - unpadded % 64) % 64, ' ');
  header.push_back('\n');

  std::string out(kMagic, kMagicLen);
  out.push_back('\x01');
  out.push_back('\x00');
  const auto hlen = static_cast<std::uint16_t>(header.size());
  out.push_back(static_cast<char>(hlen & 0xFF));
  out.push_back(static_cast<char>(hlen >> 8));
  out += header;
  if (array.dtype == NpyDtype::kFloat32) {
    for (double v : array.values) {
      const float f = static_cast<float>(v);
      out.append(reinterpret_cast<const char*>(&f), sizeof(f));
    }
  } else {
    for (double v : array.values) {
      out.append(reinterpret_cast<const char*>(&v), sizeof(v));
    }
  }
  return out;
}

NpyArray DecodeNpy(std::string_view bytes) {
  if (bytes.size() < kMagicLen ||
      std::memcmp(bytes.data(), kMagic, kMagicLen) != 0) {
    Fail(ErrorCode::kBadMagic, "missing \\x93NUMPY magic");
  }
  if (bytes.size() < kPreludeLen) {
    Fail(ErrorCode::kHeaderParse, "file ends inside the prelude");
  }
  if (bytes[6] != 1 || bytes[7] != 0) {
    Fail(ErrorCode::kHeaderParse, "only format version 1.0 is supported");
  }
  const std::size_t hlen = static_cast<unsigned char>(bytes[8]) |
                           (static_cast<unsigned char>(bytes[9]) << 8);
  if (bytes.size() < kPreludeLen + hlen) {
    Fail(ErrorCode::kHeaderParse, "file ends inside the header");
  }
  const std::string_view header = bytes.substr(kPreludeLen, hlen);
  if (header.empty() || header.front() != '{' ||
      header.find('}') == std::string_view::npos) {
    Fail(ErrorCode::kHeaderParse, "header is not a dict literal");
  }

  NpyArray a;
  const std::string_view descr = DictValue(header, "descr");
  if (descr == "'<f4'") {
    a.dtype = NpyDtype::kFloat32;
  } else if (descr == "'<f8'") {
    a.dtype = NpyDtype::kFloat64;
  } else {
    Fail(ErrorCode::kUnsupportedDtype,
         "dtype " + std::string(descr) + " (want '<f4' or '<f8')");
  }
  const std::string_view order = DictValue(header, "fortran_order");
  if (order != "False") {
    Fail(ErrorCode::kHeaderParse, "only C-order arrays are supported");
  }
  a.shape = ParseShape(DictValue(header, "shape"));

  const std::size_t n = a.element_count();
  const std::size_t item = ItemSize(a.dtype);
  const std::string_view payload = bytes.substr(kPreludeLen + hlen);
  if (payload.size() < n * item) {
    Fail(ErrorCode::kTruncatedPayload,
         "payload has " + std::to_string(payload.size()) + " bytes, need " +
             std::to_string(n * item));
  }
  if (payload.size() > n * item) {
    Fail(ErrorCode::kHeaderParse, "trailing bytes after payload");
  }
  a.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (a.dtype == NpyDtype::kFloat32) {
      float f;
      std::memcpy(&f, payload.data() + i * 4, 4);
      a.values[i] = f;
    } else {
      std::memcpy(&a.values[i], payload.data() + i * 8, 8);
    }
  }
  return a;
}

RawMap ReadNpy(const std::filesystem::path& path) {
  NpyArray a = DecodeNpy(ReadFileBytes(path));
  if (a.dtype != NpyDtype::kFloat32) {
    Fail(ErrorCode::kUnsupportedDtype, path.string() + ": maps are '<f4'");
  }
  if (a.shape.size() != 2) {
    Fail(ErrorCode::kHeaderParse, path.string() + ": expected a 2D shape");
  }
  return RawMap(static_cast<int>(a.shape[0]), static_cast<int>(a.shape[1]),
                std::move(a.values));
}

void WriteNpy(const std::filesystem::path& path, const Grid<double>& map) {
  NpyArray a;
  a.dtype = NpyDtype::kFloat32;
  a.shape = {static_cast<std::size_t>(map.height()),
             static_cast<std::size_t>(map.width())};
  a.values.assign(map.values().begin(), map.values().end());
  WriteFileBytes(path, EncodeNpy(a));
}

std::string CamFileName(std::string_view image_id, int class_id) {
  return std::string(image_id) + "_" + std::to_string(class_id) + ".npy";
}

void WriteCamStack(const std::filesystem::path& dir, const CamStack& stack) {
  for (const auto& [id, cam] : stack.entries()) {
    WriteNpy(dir / CamFileName(stack.image_id(), id), cam);
  }
}

CamStack ReadCamStack(const std::filesystem::path& dir,
                      const std::string& image_id,
                      const std::vector<int>& class_ids) {
  CamStack stack;
  bool first = true;
  for (int id : class_ids) {
    RawMap raw = ReadNpy(dir / CamFileName(image_id, id));
    if (first) {
      stack = CamStack(image_id, raw.height(), raw.width());
      first = false;
    }
    stack.Insert(id, Cam(raw.grid()));
  }
  if (first) {
    throw Error(ErrorCode::kEmptyStack, "no classes requested for " + image_id);
  }
  return stack;
}

std::string ReadFileBytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  }
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) {
    throw Error(ErrorCode::kIoError, "short write to " + path.string());
  }
}

}  // namespace camforge::io
