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
#ifndef CAMFORGE_PIPELINE_REPORT_H_
#define CAMFORGE_PIPELINE_REPORT_H_

// Report document, schema "cam-forge/report" version 1:
//
//   {
//     "schema": "cam-forge/report",
//     "version": 1,
//     "versions": {"cam_forge": "<semver>"},
//     "mode": "pipeline" | "masks",
//     "evaluation": {"images": n, "num_labels": L, "split": "...",
//                    "bg_threshold": t},
//     "config": {...},            run configuration minus paths
//     "variants": {"<name>": MetricReport | null, ...},
//     "timing_file": "timing.json"
//   }
//
// MetricReport: miou, mean_precision, mean_recall (numbers in [0, 100]),
// pixel_count (integer >= 0), per_class_iou / per_class_precision /
// per_class_recall (arrays of length L holding numbers in [0, 100] or
// null). In "pipeline" mode the variants are exactly cam_a, cam_b, or,
// and, avg, orandnet; null marks a variant whose inputs were absent. In
// "masks" mode the only variant is "pred".
//
// Wall-clock time lives in the timing file so reports of identical runs
// compare byte for byte.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "camforge/metrics.h"
#include "camforge/pipeline/json_codec.h"

namespace camforge::pipeline {

inline constexpr char kReportSchema[] = "cam-forge/report";
inline constexpr int kReportVersion = 1;
inline constexpr char kTimingFileName[] = "timing.json";

inline constexpr const char* kPipelineVariants[] = {
    "cam_a", "cam_b", "or", "and", "avg", "orandnet"};

std::string_view ToolVersion();

struct EvaluationInfo {
  std::string mode;   // "pipeline" or "masks"
  std::string split;  // "heldout", "all" or "masks"
  int images = 0;
  int num_labels = 0;
  double bg_threshold = 0.0;
};

using VariantResult = std::pair<std::string, std::optional<MetricReport>>;

Json BuildReport(const EvaluationInfo& info, const Json& config,
                 const std::vector<VariantResult>& variants);

// Every violation of the schema above; empty when valid.
std::vector<std::string> ValidateReport(const Json& report);

}  // namespace camforge::pipeline

#endif  // CAMFORGE_PIPELINE_REPORT_H_
