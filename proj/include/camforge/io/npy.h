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
#ifndef CAMFORGE_IO_NPY_H_
#define CAMFORGE_IO_NPY_H_

// NPY v1.0 reader/writer for little-endian float arrays in C order. Only
// '<f4' and '<f8' are understood; CAM files are always '<f4' with shape
// (H, W).

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "camforge/cam.h"

namespace camforge::io {

enum class NpyDtype { kFloat32, kFloat64 };

struct NpyArray {
  NpyDtype dtype = NpyDtype::kFloat32;
  std::vector<std::size_t> shape;
  std::vector<double> values;  // widened from the on-disk type

  std::size_t element_count() const;
};

std::string EncodeNpy(const NpyArray& array);
// Throws BadMagic, HeaderParse, UnsupportedDtype or TruncatedPayload.
NpyArray DecodeNpy(std::string_view bytes);

// 2D '<f4' map. Throws the decode errors above, HeaderParse for a shape
// that is not 2D, and the RawMap validation errors for bad values.
RawMap ReadNpy(const std::filesystem::path& path);
void WriteNpy(const std::filesystem::path& path, const Grid<double>& map);
inline void WriteNpy(const std::filesystem::path& path, const Cam& cam) {
  WriteNpy(path, cam.grid());
}

// Stacks are one file per class named <image_id>_<class_id>.npy.
std::string CamFileName(std::string_view image_id, int class_id);
void WriteCamStack(const std::filesystem::path& dir, const CamStack& stack);
// Reads the requested classes of one image. Values must lie in [0, 1].
CamStack ReadCamStack(const std::filesystem::path& dir,
                      const std::string& image_id,
                      const std::vector<int>& class_ids);

// Whole-file helpers. Throw IoError.
std::string ReadFileBytes(const std::filesystem::path& path);
void WriteFileBytes(const std::filesystem::path& path, std::string_view bytes);

}  // namespace camforge::io

#endif  // CAMFORGE_IO_NPY_H_
