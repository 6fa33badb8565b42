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
#include "camforge/io/npz.h"

#include <zlib.h>

#include <cstdint>

#include "camforge/error.h"
#include "camforge/io/npy.h"

namespace camforge::io {
namespace {

constexpr std::uint32_t kLocalSig = 0x04034b50;
constexpr std::uint32_t kCentralSig = 0x02014b50;
constexpr std::uint32_t kEndSig = 0x06054b50;
constexpr std::uint16_t kDosDate = (0 << 9) | (1 << 5) | 1;  // 1980-01-01

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kBadArchive, "npz: " + what);
}

void Put16(std::string& s, std::uint16_t v) {
  s.push_back(static_cast<char>(v & 0xFF));
  s.push_back(static_cast<char>(v >> 8));
}

void Put32(std::string& s, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) s.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

std::uint32_t Get(const std::string& s, std::size_t pos, int width) {
  if (pos + width > s.size()) Bad("truncated record");
  std::uint32_t v = 0;
  for (int i = 0; i < width; ++i) {
    v |= static_cast<std::uint32_t>(static_cast<unsigned char>(s[pos + i]))
         << (8 * i);
  }
  return v;
}

std::uint32_t Crc(const std::string& data) {
  return static_cast<std::uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()),
            static_cast<uInt>(data.size())));
}

}  // namespace

std::string EncodeNpz(const std::vector<ArchiveMember>& members) {
  std::string out;
  std::string central;
  for (const auto& [name, data] : members) {
    const std::uint32_t offset = static_cast<std::uint32_t>(out.size());
    const std::uint32_t crc = Crc(data);
    const auto size = static_cast<std::uint32_t>(data.size());
    Put32(out, kLocalSig);
    Put16(out, 20);  // version needed
    Put16(out, 0);   // flags
    Put16(out, 0);   // stored
    Put16(out, 0);   // time
    Put16(out, kDosDate);
    Put32(out, crc);
    Put32(out, size);
    Put32(out, size);
    Put16(out, static_cast<std::uint16_t>(name.size()));
    Put16(out, 0);
    out += name;
    out += data;

    Put32(central, kCentralSig);
    Put16(central, 20);  // made by
    Put16(central, 20);  // needed
    Put16(central, 0);
    Put16(central, 0);
    Put16(central, 0);
    Put16(central, kDosDate);
    Put32(central, crc);
    Put32(central, size);
    Put32(central, size);
    Put16(central, static_cast<std::uint16_t>(name.size()));
    Put16(central, 0);  // extra
    Put16(central, 0);  // comment
    Put16(central, 0);  // disk
    Put16(central, 0);  // internal attrs
    Put32(central, 0);  // external attrs
    Put32(central, offset);
    central += name;
  }
  const auto central_offset = static_cast<std::uint32_t>(out.size());
  out += central;
  Put32(out, kEndSig);
  Put16(out, 0);
  Put16(out, 0);
  Put16(out, static_cast<std::uint16_t>(members.size()));
  Put16(out, static_cast<std::uint16_t>(members.size()));
  Put32(out, static_cast<std::uint32_t>(central.size()));
  Put32(out, central_offset);
  Put16(out, 0);
  return out;
}

std::vector<ArchiveMember> DecodeNpz(const std::string& bytes) {
  if (bytes.size() < 22) Bad("too short for an end record");
  const std::size_t end = bytes.size() - 22;
  if (Get(bytes, end, 4) != kEndSig) Bad("missing end-of-central-directory");
  const std::uint32_t count = Get(bytes, end + 10, 2);
  std::size_t pos = Get(bytes, end + 16, 4);
  std::vector<ArchiveMember> members;
  for (std::uint32_t i = 0; i < count; ++i) {
    if (Get(bytes, pos, 4) != kCentralSig) Bad("bad central directory entry");
    if (Get(bytes, pos + 10, 2) != 0) Bad("compressed members unsupported");
    const std::uint32_t crc = Get(bytes, pos + 16, 4);
    const std::uint32_t size = Get(bytes, pos + 20, 4);
    const std::uint32_t name_len = Get(bytes, pos + 28, 2);
    const std::uint32_t extra_len = Get(bytes, pos + 30, 2);
    const std::uint32_t comment_len = Get(bytes, pos + 32, 2);
    const std::uint32_t offset = Get(bytes, pos + 42, 4);
    if (pos + 46 + name_len > bytes.size()) Bad("truncated name");
    std::string name = bytes.substr(pos + 46, name_len);
    pos += 46 + name_len + extra_len + comment_len;

    if (Get(bytes, offset, 4) != kLocalSig) Bad("bad local header");
    const std::size_t data_at =
        offset + 30 + Get(bytes, offset + 26, 2) + Get(bytes, offset + 28, 2);
    if (data_at + size > bytes.size()) Bad("member data truncated");
    std::string data = bytes.substr(data_at, size);
    if (Crc(data) != crc) Bad("CRC mismatch in " + name);
    members.emplace_back(std::move(name), std::move(data));
  }
  return members;
}

void WriteNpz(const std::filesystem::path& path,
              const std::vector<ArchiveMember>& members) {
  WriteFileBytes(path, EncodeNpz(members));
}

std::vector<ArchiveMember> ReadNpz(const std::filesystem::path& path) {
  return DecodeNpz(ReadFileBytes(path));
}

}  // namespace camforge::io
