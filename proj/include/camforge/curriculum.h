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
#ifndef CAMFORGE_CURRICULUM_H_
#define CAMFORGE_CURRICULUM_H_

#include <string_view>
#include <vector>

#include "camforge/cam.h"
#include "camforge/image.h"

namespace camforge::curriculum {

struct ScaleEntry {
  int first_epoch = 1;
  int last_epoch = 1;  // inclusive
  int factor = 1;

  friend bool operator==(const ScaleEntry&, const ScaleEntry&) = default;
};

// Epoch ranges mapped to downsampling factors; factor 1 after the last
// range.
struct ScaleSchedule {
  std::vector<ScaleEntry> entries;

  // Throws InvalidSchedule unless ranges are contiguous from epoch 1 and
  // factors are non-increasing powers of two.
  void Validate() const;

  friend bool operator==(const ScaleSchedule&, const ScaleSchedule&) = default;
};

// Epochs 1-2 -> 8, 3-4 -> 4, 5-6 -> 2.
ScaleSchedule DefaultSchedule();

enum class BoundaryMode {
  kCumulative,  // boundaries are the last epoch of each stage (2, 4, 6)
  kDurations,   // boundaries are stage lengths (2, 4, 6 -> 1-2, 3-6, 7-12)
};

BoundaryMode ParseBoundaryMode(std::string_view name);
std::string_view BoundaryModeName(BoundaryMode mode);

ScaleSchedule MakeSchedule(const std::vector<int>& factors,
                           const std::vector<int>& boundaries,
                           BoundaryMode mode);

int ScheduleFactor(const ScaleSchedule& schedule, int epoch);

// Block mean per channel, rounded half up. Throws IndivisibleDimensions.
RgbImage DownsampleImage(const RgbImage& image, int factor);

// Most frequent label per block, lowest label on ties; 255 counts like any
// other label. Throws IndivisibleDimensions.
PseudoMask DownsampleMask(const PseudoMask& mask, int factor);

// Central crop to the largest size divisible by factor.
RgbImage CenterCrop(const RgbImage& image, int factor);
PseudoMask CenterCrop(const PseudoMask& mask, int factor);

struct ImagePair {
  RgbImage image;
  PseudoMask mask;
};

// Every pair center-cropped and downsampled by the epoch's factor, order
// kept. Throws DimensionMismatch if a pair's image and mask disagree.
std::vector<ImagePair> BuildEpochDataset(const std::vector<ImagePair>& pairs,
                                         const ScaleSchedule& schedule,
                                         int epoch);

}  // namespace camforge::curriculum

#endif  // CAMFORGE_CURRICULUM_H_
