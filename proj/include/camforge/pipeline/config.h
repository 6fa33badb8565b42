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
#ifndef CAMFORGE_PIPELINE_CONFIG_H_
#define CAMFORGE_PIPELINE_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "camforge/curriculum.h"
#include "camforge/metrics.h"
#include "camforge/orand/train.h"
#include "camforge/pipeline/json_codec.h"
#include "camforge/synthgen.h"

namespace camforge::pipeline {

// Every command reads the same configuration. Empty paths resolve under
// the output directory:
//   corpus      <out>/corpus
//   checkpoint  <out>/checkpoint.npz
struct RunConfig {
  std::filesystem::path out = "out";
  std::filesystem::path corpus;
  std::filesystem::path checkpoint;

  std::uint64_t seed = 0;
  // "all", "or", "and" or "avg": which fused stacks cmd_fuse writes.
  std::string fusion = "all";
  double bg_threshold = 0.25;

  synth::CorpusSpec synth;

  orand::TrainConfig train;
  std::string architecture = "default";  // or "vgg16"
  // Images [0, train_images) feed training; -1 means every image. When
  // images remain, evaluation uses only those.
  int train_images = -1;
  // Upper bound on (OR, AND) class-map pairs; 0 means no bound.
  int max_pairs = 64;

  std::vector<int> schedule_factors = {8, 4, 2};
  std::vector<int> schedule_boundaries = {2, 4, 6};
  curriculum::BoundaryMode schedule_mode = curriculum::BoundaryMode::kCumulative;
  // Epochs materialized by cmd_schedule; 0 means one past the last stage.
  int schedule_epochs = 0;
  // Pseudo-masks paired with images: "orandnet", "gt", "or", "and", "avg",
  // "cam_a" or "cam_b".
  std::string schedule_masks = "orandnet";

  MetricOptions metrics;

  std::filesystem::path corpus_dir() const;
  std::filesystem::path checkpoint_path() const;
  curriculum::ScaleSchedule schedule() const;
  orand::FcnArchitecture fcn_architecture() const;
  // Master seed propagated into the corpus and training seeds.
  synth::CorpusSpec corpus_spec() const;
  orand::TrainConfig train_config() const;

  // Throws ConfigError (or the owning module's error) for out-of-range
  // values.
  void Validate() const;
};

// Overlays a JSON document onto *config. Unknown keys are errors.
void ApplyJson(const Json& json, RunConfig* config);
RunConfig LoadRunConfig(const std::filesystem::path& path);
Json ToJson(const RunConfig& config);

}  // namespace camforge::pipeline

#endif  // CAMFORGE_PIPELINE_CONFIG_H_
