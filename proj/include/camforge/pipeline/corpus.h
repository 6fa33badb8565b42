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
#ifndef CAMFORGE_PIPELINE_CORPUS_H_
#define CAMFORGE_PIPELINE_CORPUS_H_

// On-disk corpus layout:
//
//   manifest.json          spec echo plus the class ids of every image
//   gt/<id>.png            8-bit label masks
//   images/<id>.png        RGB renders
//   cams_a/<id>_<k>.npy    first CAM source, one '<f4' map per class
//   cams_b/<id>_<k>.npy    second CAM source
//
// CAMs from an external exporter can be dropped into cams_a / cams_b as
// long as the manifest lists their class ids.

#include <filesystem>
#include <string>
#include <vector>

#include "camforge/cam.h"
#include "camforge/synthgen.h"

namespace camforge::pipeline {

inline constexpr char kCorpusSchema[] = "cam-forge/corpus";
inline constexpr int kCorpusVersion = 1;

struct CorpusEntry {
  std::string id;
  std::vector<int> classes;
};

struct CorpusIndex {
  int height = 0;
  int width = 0;
  int num_classes = 0;  // labels 0..num_classes
  std::vector<CorpusEntry> images;
};

// Generates and writes every sample of spec into dir.
CorpusIndex WriteCorpus(const std::filesystem::path& dir,
                        const synth::CorpusSpec& spec);

// Throws IoError when the manifest is missing and ConfigError when it is
// malformed.
CorpusIndex ReadManifest(const std::filesystem::path& dir);

CamStack ReadStack(const std::filesystem::path& dir, const CorpusEntry& entry);
void WriteStack(const std::filesystem::path& dir, const CamStack& stack);

}  // namespace camforge::pipeline

#endif  // CAMFORGE_PIPELINE_CORPUS_H_
