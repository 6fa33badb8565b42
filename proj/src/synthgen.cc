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
#include "camforge/synthgen.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "camforge/rng.h"

namespace camforge::synth {
namespace {

constexpr int kGtAttempts = 200;
constexpr int kCenterAttempts = 60;
constexpr int kBlobAttempts = 100;
constexpr double kFalseRegionSharpness = 0.3;

// Stream ids under a sample seed.
enum Stream : std::uint64_t {
  kStreamGt = 0,
  kStreamPeaky = 1,
  kStreamDense = 2,
  kStreamPlan = 3,
  kStreamImage = 4,
};

[[noreturn]] void BadSpec(const std::string& what) {
  throw Error(ErrorCode::kConfigError, "corpus spec: " + what);
}

// Marks every pixel within `radius` (Euclidean) of a set pixel.
Grid<std::uint8_t> Dilate(const Grid<std::uint8_t>& mask, double radius) {
  Grid<std::uint8_t> out(mask.height(), mask.width(), 0);
  const int r = static_cast<int>(std::floor(radius));
  const double r2 = radius * radius;
  for (int y = 0; y < mask.height(); ++y) {
    for (int x = 0; x < mask.width(); ++x) {
      if (!mask.at(y, x)) continue;
      for (int dy = -r; dy <= r; ++dy) {
        for (int dx = -r; dx <= r; ++dx) {
          if (dy * dy + dx * dx > r2) continue;
          const int yy = y + dy;
          const int xx = x + dx;
          if (yy < 0 || xx < 0 || yy >= mask.height() || xx >= mask.width()) {
            continue;
          }
          out.at(yy, xx) = 1;
        }
      }
    }
  }
  return out;
}

Grid<std::uint8_t> ClassMask(const PseudoMask& gt, int class_id) {
  Grid<std::uint8_t> m(gt.height(), gt.width(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = gt.labels()[i] == class_id ? 1 : 0;
  }
  return m;
}

Grid<std::uint8_t> ForegroundMask(const PseudoMask& gt) {
  Grid<std::uint8_t> m(gt.height(), gt.width(), 0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto v = gt.labels()[i];
    m[i] = (v != kBackgroundLabel && v != kIgnoreLabel) ? 1 : 0;
  }
  return m;
}

std::vector<int> ForegroundClasses(const PseudoMask& gt) {
  std::vector<int> ids;
  for (auto v : gt.present_labels()) {
    if (v != kBackgroundLabel && v != kIgnoreLabel) ids.push_back(v);
  }
  return ids;
}

// Pixel centers lie at integer coordinates.
bool BlobFits(const FalseBlob& b, const Grid<std::uint8_t>& blocked) {
  const int y0 = std::max(0, static_cast<int>(std::floor(b.cy - b.radius)));
  const int y1 = std::min(blocked.height() - 1,
                          static_cast<int>(std::ceil(b.cy + b.radius)));
  const int x0 = std::max(0, static_cast<int>(std::floor(b.cx - b.radius)));
  const int x1 = std::min(blocked.width() - 1,
                          static_cast<int>(std::ceil(b.cx + b.radius)));
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (std::hypot(y - b.cy, x - b.cx) < b.radius && blocked.at(y, x)) {
        return false;
      }
    }
  }
  return true;
}

void Stamp(const FalseBlob& b, Grid<std::uint8_t>* mask) {
  for (int y = 0; y < mask->height(); ++y) {
    for (int x = 0; x < mask->width(); ++x) {
      if (std::hypot(y - b.cy, x - b.cx) < b.radius) mask->at(y, x) = 1;
    }
  }
}

// Places a blob of the given radius whose support avoids `blocked`. Returns
// false if no spot was found.
bool PlaceBlob(Rng& rng, int class_id, double radius, double s_min,
               double s_max, const Grid<std::uint8_t>& blocked,
               FalseBlob* out) {
  for (int attempt = 0; attempt < kBlobAttempts; ++attempt) {
    FalseBlob b;
    b.class_id = class_id;
    b.cy = rng.Uniform(0.0, blocked.height() - 1.0);
    b.cx = rng.Uniform(0.0, blocked.width() - 1.0);
    b.radius = radius;
    b.strength = rng.Uniform(s_min, s_max);
    if (BlobFits(b, blocked)) {
      *out = b;
      return true;
    }
  }
  return false;
}

void AddBlob(const FalseBlob& b, double sharpness, Grid<double>* raw) {
  for (int y = 0; y < raw->height(); ++y) {
    for (int x = 0; x < raw->width(); ++x) {
      const double v =
          b.strength * BumpProfile(std::hypot(y - b.cy, x - b.cx), b.radius,
                                   sharpness);
      raw->at(y, x) = std::max(raw->at(y, x), v);
    }
  }
}

bool RasterizeShape(Rng& rng, ShapeFamily family, double area, int h, int w,
                    Grid<std::uint8_t>* shape) {
  const bool ellipse =
      family == ShapeFamily::kEllipse ||
      (family == ShapeFamily::kMixed && rng.Uniform() < 0.5);
  const double aspect = rng.Uniform(0.7, 1.4);
  double ry, rx;
  if (ellipse) {
    ry = std::sqrt(area / (std::numbers::pi * aspect));
  } else {
    ry = std::sqrt(area / (4.0 * aspect));
  }
  rx = ry * aspect;
  if (2 * ry + 2 > h || 2 * rx + 2 > w) return false;
  const double cy = rng.Uniform(ry + 0.5, h - 1.5 - ry);
  const double cx = rng.Uniform(rx + 0.5, w - 1.5 - rx);
  *shape = Grid<std::uint8_t>(h, w, 0);
  int filled = 0;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const double ny = (y - cy) / ry;
      const double nx = (x - cx) / rx;
      const bool in = ellipse ? (ny * ny + nx * nx <= 1.0)
                              : (std::abs(ny) <= 1.0 && std::abs(nx) <= 1.0);
      if (in) {
        shape->at(y, x) = 1;
        ++filled;
      }
    }
  }
  return filled > 0;
}

}  // namespace

std::string_view ShapeFamilyName(ShapeFamily f) {
  switch (f) {
    case ShapeFamily::kEllipse: return "ellipse";
    case ShapeFamily::kRectangle: return "rectangle";
    case ShapeFamily::kMixed: return "mixed";
  }
  return "?";
}

ShapeFamily ParseShapeFamily(std::string_view name) {
  if (name == "ellipse") return ShapeFamily::kEllipse;
  if (name == "rectangle") return ShapeFamily::kRectangle;
  if (name == "mixed") return ShapeFamily::kMixed;
  BadSpec("unknown shape family '" + std::string(name) + "'");
}

std::string_view FalseOverlapName(FalseOverlap m) {
  switch (m) {
    case FalseOverlap::kDisjoint: return "disjoint";
    case FalseOverlap::kOverlapping: return "overlapping";
    case FalseOverlap::kNone: return "none";
  }
  return "?";
}

FalseOverlap ParseFalseOverlap(std::string_view name) {
  if (name == "disjoint") return FalseOverlap::kDisjoint;
  if (name == "overlapping") return FalseOverlap::kOverlapping;
  if (name == "none") return FalseOverlap::kNone;
  BadSpec("unknown false-overlap mode '" + std::string(name) + "'");
}

void CorpusSpec::Validate() const {
  if (height <= 0 || width <= 0 || height % 8 != 0 || width % 8 != 0) {
    BadSpec("image size must be a positive multiple of 8");
  }
  if (num_images < 0) BadSpec("num_images must be >= 0");
  if (num_classes < 1 || num_classes > kMaxClassId) {
    BadSpec("num_classes must lie in 1..254");
  }
  if (classes_min < 0 || classes_max < classes_min ||
      classes_max > num_classes) {
    BadSpec("need 0 <= classes_min <= classes_max <= num_classes");
  }
  if (!(coverage_min >= 0.0 && coverage_min <= coverage_max &&
        coverage_max < 1.0)) {
    BadSpec("need 0 <= coverage_min <= coverage_max < 1");
  }
  auto unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (peaky.bump_count < 0 || peaky.false_peak_count < 0 ||
      dense.false_region_count < 0 || dense.dilation < 0) {
    BadSpec("counts must be >= 0");
  }
  if (!(peaky.bump_radius > 0.0) || !(peaky.false_peak_radius > 0.0) ||
      !(dense.false_region_radius > 0.0)) {
    BadSpec("radii must be > 0");
  }
  if (!(peaky.sharpness > 0.0 && peaky.sharpness <= 1.0)) {
    BadSpec("sharpness must lie in (0, 1]");
  }
  if (!unit(peaky.false_strength_min) || !unit(peaky.false_strength_max) ||
      peaky.false_strength_min > peaky.false_strength_max ||
      !unit(dense.false_strength_min) || !unit(dense.false_strength_max) ||
      dense.false_strength_min > dense.false_strength_max ||
      !unit(dense.plateau_level) || dense.plateau_level == 0.0) {
    BadSpec("strengths must lie in [0, 1] with min <= max");
  }
}

double BumpProfile(double distance, double radius, double sharpness) {
  if (distance >= radius) return 0.0;
  const double core = (1.0 - sharpness) * radius;
  if (distance <= core) return 1.0;
  const double u = (distance - core) / (radius - core);
  return 0.5 * (1.0 + std::cos(std::numbers::pi * u));
}

std::uint64_t SampleSeed(const CorpusSpec& spec, int index) {
  return DeriveSeed(spec.seed, static_cast<std::uint64_t>(index));
}

std::string ImageId(int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "img_%05d", index);
  return buf;
}

PseudoMask GenGroundTruth(const CorpusSpec& spec, int index) {
  spec.Validate();
  const int h = spec.height;
  const int w = spec.width;
  Rng rng(DeriveSeed(SampleSeed(spec, index), kStreamGt));

  const int k = rng.UniformInt(spec.classes_min, spec.classes_max);
  std::vector<int> ids(spec.num_classes);
  for (int i = 0; i < spec.num_classes; ++i) ids[i] = i + 1;
  rng.Shuffle(std::span<int>(ids));
  ids.resize(k);
  std::sort(ids.begin(), ids.end());

  if (k == 0) return PseudoMask(h, w, kBackgroundLabel);

  const double gap = spec.dense.dilation + 1.0;
  for (int attempt = 0; attempt < kGtAttempts; ++attempt) {
    const double coverage = rng.Uniform(spec.coverage_min, spec.coverage_max);
    const double area = coverage * h * w / k;
    Grid<std::uint8_t> labels(h, w, kBackgroundLabel);
    bool ok = true;
    for (int obj = 0; obj < k && ok; ++obj) {
      const Grid<std::uint8_t> blocked =
          Dilate(ForegroundMask(PseudoMask(labels)), gap);
      bool placed = false;
      for (int c = 0; c < kCenterAttempts && !placed; ++c) {
        Grid<std::uint8_t> shape;
        if (!RasterizeShape(rng, spec.shapes, area, h, w, &shape)) continue;
        bool clash = false;
        for (std::size_t i = 0; i < shape.size() && !clash; ++i) {
          clash = shape[i] && blocked[i];
        }
        if (clash) continue;
        for (std::size_t i = 0; i < shape.size(); ++i) {
          if (shape[i]) labels[i] = static_cast<std::uint8_t>(ids[obj]);
        }
        placed = true;
      }
      ok = placed;
    }
    if (!ok) continue;
    std::size_t fg = 0;
    for (auto v : labels.values()) fg += v != kBackgroundLabel;
    const double frac = static_cast<double>(fg) / (h * w);
    if (frac >= spec.coverage_min && frac <= spec.coverage_max) {
      return PseudoMask(std::move(labels));
    }
  }
  throw Error(ErrorCode::kPlacementFailure,
              "could not place " + std::to_string(k) + " objects in image " +
                  std::to_string(index));
}

ActivationPlan PlanFalseActivations(const PseudoMask& gt,
                                    const CorpusSpec& spec,
                                    std::uint64_t seed) {
  ActivationPlan plan;
  if (spec.false_overlap == FalseOverlap::kNone) return plan;
  Rng rng(DeriveSeed(seed, kStreamPlan));
  const Grid<std::uint8_t> keep_out =
      Dilate(ForegroundMask(gt), spec.dense.dilation + 1.0);
  const bool disjoint = spec.false_overlap == FalseOverlap::kDisjoint;
  // Pixels a new blob must avoid, per style.
  Grid<std::uint8_t> block_dense = keep_out;
  Grid<std::uint8_t> block_peaky = keep_out;

  for (int k : ForegroundClasses(gt)) {
    for (int i = 0; i < spec.peaky.false_peak_count; ++i) {
      FalseBlob b;
      if (!PlaceBlob(rng, k, spec.peaky.false_peak_radius,
                     spec.peaky.false_strength_min,
                     spec.peaky.false_strength_max, block_peaky, &b)) {
        continue;
      }
      plan.peaky_false.push_back(b);
      if (disjoint) Stamp(b, &block_dense);
      if (!disjoint) {
        // Overlapping mode: a dense false region sits on every false peak.
        FalseBlob d = b;
        d.radius = spec.dense.false_region_radius;
        d.strength = rng.Uniform(spec.dense.false_strength_min,
                                 spec.dense.false_strength_max);
        plan.dense_false.push_back(d);
      }
    }
    if (!disjoint) continue;
    for (int i = 0; i < spec.dense.false_region_count; ++i) {
      FalseBlob b;
      if (!PlaceBlob(rng, k, spec.dense.false_region_radius,
                     spec.dense.false_strength_min,
                     spec.dense.false_strength_max, block_dense, &b)) {
        continue;
      }
      plan.dense_false.push_back(b);
      Stamp(b, &block_peaky);
    }
  }
  return plan;
}

Grid<std::uint8_t> FalseSupport(const ActivationPlan& plan, bool peaky,
                                int height, int width) {
  Grid<std::uint8_t> m(height, width, 0);
  for (const auto& b : peaky ? plan.peaky_false : plan.dense_false) {
    Stamp(b, &m);
  }
  return m;
}

CamStack GenPeakyCam(const PseudoMask& gt, const CorpusSpec& spec,
                     std::uint64_t seed, std::string image_id) {
  const ActivationPlan plan = PlanFalseActivations(gt, spec, seed);
  Rng rng(DeriveSeed(seed, kStreamPeaky));
  CamStack stack(std::move(image_id), gt.height(), gt.width());
  for (int k : ForegroundClasses(gt)) {
    const Grid<std::uint8_t> obj = ClassMask(gt, k);
    std::vector<std::pair<int, int>> pixels;
    for (int y = 0; y < gt.height(); ++y) {
      for (int x = 0; x < gt.width(); ++x) {
        if (obj.at(y, x)) pixels.emplace_back(y, x);
      }
    }
    const double eq_radius =
        std::sqrt(static_cast<double>(pixels.size()) / std::numbers::pi);
    const double radius = std::max(1.5, spec.peaky.bump_radius * eq_radius);
    Grid<double> raw(gt.height(), gt.width(), 0.0);
    for (int b = 0; b < spec.peaky.bump_count; ++b) {
      const auto [cy, cx] =
          pixels[rng.UniformInt(0, static_cast<int>(pixels.size()) - 1)];
      FalseBlob bump{k, static_cast<double>(cy), static_cast<double>(cx),
                     radius, 1.0};
      AddBlob(bump, spec.peaky.sharpness, &raw);
    }
    // True activations never leave the object.
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!obj[i]) raw[i] = 0.0;
    }
    for (const auto& f : plan.peaky_false) {
      if (f.class_id == k) AddBlob(f, spec.peaky.sharpness, &raw);
    }
    stack.Insert(k, NormalizeCam(RawMap(std::move(raw))));
  }
  return stack;
}

CamStack GenDenseCam(const PseudoMask& gt, const CorpusSpec& spec,
                     std::uint64_t seed, std::string image_id) {
  const ActivationPlan plan = PlanFalseActivations(gt, spec, seed);
  CamStack stack(std::move(image_id), gt.height(), gt.width());
  for (int k : ForegroundClasses(gt)) {
    const Grid<std::uint8_t> region =
        Dilate(ClassMask(gt, k), spec.dense.dilation);
    Grid<double> raw(gt.height(), gt.width(), 0.0);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (region[i]) raw[i] = spec.dense.plateau_level;
    }
    for (const auto& f : plan.dense_false) {
      if (f.class_id == k) AddBlob(f, kFalseRegionSharpness, &raw);
    }
    stack.Insert(k, NormalizeCam(RawMap(std::move(raw))));
  }
  return stack;
}

SynthSample GenSample(const CorpusSpec& spec, int index) {
  SynthSample s;
  s.image_id = ImageId(index);
  s.seed = SampleSeed(spec, index);
  s.gt = GenGroundTruth(spec, index);
  s.cams_a = GenPeakyCam(s.gt, spec, s.seed, s.image_id);
  s.cams_b = GenDenseCam(s.gt, spec, s.seed, s.image_id);
  return s;
}

std::vector<SynthSample> GenCorpus(const CorpusSpec& spec) {
  spec.Validate();
  std::vector<SynthSample> out;
  out.reserve(spec.num_images);
  for (int i = 0; i < spec.num_images; ++i) out.push_back(GenSample(spec, i));
  return out;
}

RgbImage RenderImage(const PseudoMask& gt, std::uint64_t seed) {
  Rng rng(DeriveSeed(seed, kStreamImage));
  RgbImage img(gt.height(), gt.width());
  for (int y = 0; y < gt.height(); ++y) {
    for (int x = 0; x < gt.width(); ++x) {
      const auto label = gt.at(y, x);
      std::array<std::uint8_t, 3> base{70, 70, 70};
      if (label == kIgnoreLabel) {
        base = {255, 255, 255};
      } else if (label != kBackgroundLabel) {
        base = VocColor(label);
      }
      for (int c = 0; c < 3; ++c) {
        const int v = base[c] + rng.UniformInt(-24, 24);
        img.at(y, x, c) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
      }
    }
  }
  return img;
}

}  // namespace camforge::synth
