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
#ifndef CAMFORGE_IO_PNG_H_
#define CAMFORGE_IO_PNG_H_

#include <filesystem>
#include <string>
#include <string_view>

#include "camforge/cam.h"
#include "camforge/image.h"

namespace camforge::io {

// Label masks are 8-bit grayscale PNGs whose pixel values are the labels.
std::string EncodeMaskPng(const PseudoMask& mask);
// Throws BadPng for undecodable data, DepthMismatch for anything other than
// 8-bit grayscale.
PseudoMask DecodeMaskPng(std::string_view bytes);

void WriteMaskPng(const std::filesystem::path& path, const PseudoMask& mask);
PseudoMask ReadMaskPng(const std::filesystem::path& path);

// Write-only VOC-palette visualization of a mask.
void WriteColorMaskPng(const std::filesystem::path& path,
                       const PseudoMask& mask);

std::string EncodeRgbPng(const RgbImage& image);
// Throws BadPng, or DepthMismatch for anything other than 8-bit RGB.
RgbImage DecodeRgbPng(std::string_view bytes);

void WriteRgbPng(const std::filesystem::path& path, const RgbImage& image);
RgbImage ReadRgbPng(const std::filesystem::path& path);

}  // namespace camforge::io

#endif  // CAMFORGE_IO_PNG_H_
