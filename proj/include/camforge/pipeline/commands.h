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
#ifndef CAMFORGE_PIPELINE_COMMANDS_H_
#define CAMFORGE_PIPELINE_COMMANDS_H_

// One function per CLI subcommand. Each validates the configuration, takes
// the output directory lock and throws camforge::Error on failure.
//
// Output layout under RunConfig::out:
//
//   corpus/                       cmd_synth (unless paths.corpus is set)
//   fused/{or,and,avg}/<id>_<k>.npy   cmd_fuse
//   checkpoint.npz, history.json  cmd_train
//   refined/<id>_<k>.npy          cmd_infer
//   schedule/schedule.json        cmd_schedule
//   schedule/epoch_<e>/{images,masks}/<id>.png
//   report.json, timing.json      cmd_eval
//   masks/<variant>/<id>.png      cmd_eval pseudo-masks

#include <filesystem>
#include <ostream>
#include <vector>

#include "camforge/orand/train.h"
#include "camforge/pipeline/config.h"
#include "camforge/pipeline/json_codec.h"

namespace camforge::pipeline {

void CmdSynth(const RunConfig& config, std::ostream& log);
void CmdFuse(const RunConfig& config, std::ostream& log);
orand::TrainResult CmdTrain(const RunConfig& config, std::ostream& log);
void CmdInfer(const RunConfig& config, std::ostream& log);
void CmdSchedule(const RunConfig& config, std::ostream& log);

struct EvalOptions {
  // When set, compares label PNGs in this directory with gt_masks (or the
  // corpus gt/ when empty) instead of evaluating the pipeline variants.
  std::filesystem::path pred_masks;
  std::filesystem::path gt_masks;
  bool write_masks = true;
  bool color_masks = false;  // VOC-colored copies under masks_color/
};

// Returns the report that was written.
Json CmdEval(const RunConfig& config, const EvalOptions& options,
             std::ostream& log);

// Images used for training and evaluation under the configured split.
struct SplitRange {
  int train_end = 0;   // [0, train_end)
  int eval_begin = 0;  // [eval_begin, count)
};
SplitRange ResolveSplit(int train_images, int count);

}  // namespace camforge::pipeline

#endif  // CAMFORGE_PIPELINE_COMMANDS_H_
