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
#ifndef CAMFORGE_IMAGE_H_
#define CAMFORGE_IMAGE_H_

#include <array>
#include <cstdint>
#include <vector>

#include "camforge/error.h"

namespace camforge {

// Interleaved 8-bit RGB image, row-major.
struct RgbImage {
  int height = 0;
  int width = 0;
  std::vector<std::uint8_t> data;

  RgbImage() = default;
  RgbImage(int h, int w, std::uint8_t fill = 0)
      : height(h), width(w),
        data(static_cast<std::size_t>(h) * w * 3, fill) {}

  std::uint8_t& at(int y, int x, int c) {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }
  std::uint8_t at(int y, int x, int c) const {
    return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
  }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

// PASCAL VOC palette entry for a label, built by spreading the bits of the
// label over the high bits of the three channels.
inline std::array<std::uint8_t, 3> VocColor(int label) {
  std::array<std::uint8_t, 3> rgb{0, 0, 0};
  int c = label;
  for (int shift = 7; shift >= 0 && c > 0; --shift, c >>= 3) {
    rgb[0] |= static_cast<std::uint8_t>(((c >> 0) & 1) << shift);
    rgb[1] |= static_cast<std::uint8_t>(((c >> 1) & 1) << shift);
    rgb[2] |= static_cast<std::uint8_t>(((c >> 2) & 1) << shift);
  }
  return rgb;
}

}  // namespace camforge

#endif  // CAMFORGE_IMAGE_H_
