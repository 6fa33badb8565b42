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
#ifndef CAMFORGE_IO_CHECKPOINT_H_
#define CAMFORGE_IO_CHECKPOINT_H_

// Refiner checkpoints are NPZ archives:
//   meta.json           architecture, init seed/scheme, training config
//   conv<i>_weight.npy  '<f8' (out, in, k, k)
//   conv<i>_bias.npy    '<f8' (out,)

#include <filesystem>
#include <string>

#include "camforge/orand/network.h"
#include "camforge/orand/train.h"

namespace camforge::io {

inline constexpr char kCheckpointSchema[] = "cam-forge/checkpoint";
inline constexpr int kCheckpointVersion = 1;

struct Checkpoint {
  orand::FcnParams params;
  orand::TrainConfig config;
};

std::string EncodeCheckpoint(const Checkpoint& checkpoint);
// Throws BadArchive for missing members or metadata, ShapeMismatch when a
// tensor disagrees with the stored architecture.
Checkpoint DecodeCheckpoint(const std::string& bytes);

void SaveCheckpoint(const std::filesystem::path& path,
                    const Checkpoint& checkpoint);
Checkpoint LoadCheckpoint(const std::filesystem::path& path);

}  // namespace camforge::io

#endif  // CAMFORGE_IO_CHECKPOINT_H_
