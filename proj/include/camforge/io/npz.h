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
#ifndef CAMFORGE_IO_NPZ_H_
#define CAMFORGE_IO_NPZ_H_

// Uncompressed zip archive of named members, the layout numpy.savez
// produces. Members keep insertion order; timestamps are fixed so equal
// contents give equal bytes.

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace camforge::io {

using ArchiveMember = std::pair<std::string, std::string>;  // name, bytes

std::string EncodeNpz(const std::vector<ArchiveMember>& members);
// Throws BadArchive on structural damage or a CRC mismatch.
std::vector<ArchiveMember> DecodeNpz(const std::string& bytes);

void WriteNpz(const std::filesystem::path& path,
              const std::vector<ArchiveMember>& members);
std::vector<ArchiveMember> ReadNpz(const std::filesystem::path& path);

}  // namespace camforge::io

#endif  // CAMFORGE_IO_NPZ_H_
