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
#ifndef CAMFORGE_SYNTHGEN_H_
#define CAMFORGE_SYNTHGEN_H_

// Synthetic ground truth plus two paired CAM styles:
//
//  * peaky  - a few flat-topped radial bumps inside each object at full
//             strength, small support;
//  * dense  - a plateau over the object dilated by a few pixels at moderate
//             strength, large support.
//
// Each style also gets seeded false activations outside every object. In
// `disjoint` mode the false supports of the two styles never share a pixel,
// so a pixel-wise product removes all of them.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "camforge/cam.h"
#include "camforge/image.h"

namespace camforge::synth {

enum class ShapeFamily { kEllipse, kRectangle, kMixed };
enum class FalseOverlap { kDisjoint, kOverlapping, kNone };

std::string_view ShapeFamilyName(ShapeFamily f);
ShapeFamily ParseShapeFamily(std::string_view name);
std::string_view FalseOverlapName(FalseOverlap m);
FalseOverlap ParseFalseOverlap(std::string_view name);

struct PeakyStyle {
  int bump_count = 4;            // per object
  double bump_radius = 0.6;      // fraction of the object's equivalent radius
  double sharpness = 0.4;        // fraction of the radius spent falling off
  int false_peak_count = 1;      // per class
  double false_peak_radius = 3.0;  // pixels
  double false_strength_min = 0.6;
  double false_strength_max = 0.95;
};

struct DenseStyle {
  int dilation = 2;              // pixels added around each object
  double plateau_level = 0.4;    // raw value on the dilated object
  int false_region_count = 1;    // per class
  double false_region_radius = 5.0;  // pixels
  double false_strength_min = 0.8;
  double false_strength_max = 1.0;
};

struct CorpusSpec {
  int height = 32;
  int width = 32;
  int num_images = 100;
  int num_classes = 4;           // class vocabulary 1..num_classes
  int classes_min = 1;           // per image
  int classes_max = 2;
  double coverage_min = 0.10;    // foreground fraction bounds
  double coverage_max = 0.40;
  ShapeFamily shapes = ShapeFamily::kMixed;
  PeakyStyle peaky;
  DenseStyle dense;
  FalseOverlap false_overlap = FalseOverlap::kDisjoint;
  std::uint64_t seed = 0;

  // Throws ConfigError. Sizes must be positive multiples of 8.
  void Validate() const;
};

// Everything derived from one (seed, index) pair.
struct SynthSample {
  std::string image_id;
  std::uint64_t seed = 0;
  PseudoMask gt;
  CamStack cams_a;  // peaky
  CamStack cams_b;  // dense
};

// Seed for sample `index`; distinct for distinct indices.
std::uint64_t SampleSeed(const CorpusSpec& spec, int index);
std::string ImageId(int index);

// Non-overlapping shapes labeled with class ids on background 0. Objects
// keep a gap of dense.dilation + 1 pixels. Throws PlacementFailure after a
// bounded number of attempts.
PseudoMask GenGroundTruth(const CorpusSpec& spec, int index);

// Where every false activation of one image goes. Both CAM styles read the
// same plan, which is how the disjoint mode is made exact.
struct FalseBlob {
  int class_id = 0;
  double cy = 0.0;
  double cx = 0.0;
  double radius = 0.0;
  double strength = 0.0;
};

struct ActivationPlan {
  std::vector<FalseBlob> peaky_false;
  std::vector<FalseBlob> dense_false;
};

ActivationPlan PlanFalseActivations(const PseudoMask& gt,
                                    const CorpusSpec& spec,
                                    std::uint64_t seed);

CamStack GenPeakyCam(const PseudoMask& gt, const CorpusSpec& spec,
                     std::uint64_t seed, std::string image_id = "");
CamStack GenDenseCam(const PseudoMask& gt, const CorpusSpec& spec,
                     std::uint64_t seed, std::string image_id = "");

// Indicator of pixels carrying false activations for a style (1 = false).
Grid<std::uint8_t> FalseSupport(const ActivationPlan& plan, bool peaky,
                                int height, int width);

SynthSample GenSample(const CorpusSpec& spec, int index);
std::vector<SynthSample> GenCorpus(const CorpusSpec& spec);

// Flat class colors plus seeded noise; used as the image half of the
// image / pseudo-mask pairs.
RgbImage RenderImage(const PseudoMask& gt, std::uint64_t seed);

// Truncated-cosine radial profile: 1 up to (1 - sharpness) * radius, then
// a half-cosine falloff reaching 0 at radius.
double BumpProfile(double distance, double radius, double sharpness);

}  // namespace camforge::synth

#endif  // CAMFORGE_SYNTHGEN_H_
