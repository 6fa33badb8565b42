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
#include "camforge/cam.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace camforge {
namespace {

void CheckNonEmpty(const Grid<double>& g) {
  if (g.height() <= 0 || g.width() <= 0) {
    throw Error(ErrorCode::kEmptyMap, "activation map has a zero dimension");
  }
}

void CheckFinite(const Grid<double>& g) {
  for (double v : g.values()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteInput,
                  "activation map contains NaN or infinity");
    }
  }
}

double MaxOf(const Grid<double>& g) {
  double m = 0.0;
  for (double v : g.values()) m = std::max(m, v);
  return m;
}

void CheckSameShape(const Cam& a, const Cam& b) {
  if (!a.grid().same_shape(b.grid())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "CAM shapes differ: " + std::to_string(a.height()) + "x" +
                    std::to_string(a.width()) + " vs " +
                    std::to_string(b.height()) + "x" +
                    std::to_string(b.width()));
  }
}

template <typename Op>
RawMap PixelWise(const Cam& c1, const Cam& c2, Op op) {
  CheckSameShape(c1, c2);
  const auto a = c1.grid().values();
  const auto b = c2.grid().values();
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return RawMap(c1.height(), c1.width(), std::move(out));
}

}  // namespace

RawMap::RawMap(Grid<double> values) : grid_(std::move(values)) {
  CheckNonEmpty(grid_);
  CheckFinite(grid_);
  for (double v : grid_.values()) {
    if (v < 0.0) {
      throw Error(ErrorCode::kInvalidValue, "raw map has a negative value");
    }
  }
}

double RawMap::max() const { return MaxOf(grid_); }

Cam::Cam(Grid<double> values) : grid_(std::move(values)) {
  CheckNonEmpty(grid_);
  CheckFinite(grid_);
  for (double v : grid_.values()) {
    if (v < 0.0 || v > 1.0) {
      throw Error(ErrorCode::kInvalidValue, "CAM value outside [0, 1]");
    }
  }
}

Cam Cam::Zeros(int height, int width) {
  return Cam(Grid<double>(height, width, 0.0));
}

double Cam::max() const { return MaxOf(grid_); }

CamStack::CamStack(std::string image_id, int height, int width)
    : image_id_(std::move(image_id)), height_(height), width_(width) {
  if (height <= 0 || width <= 0) {
    throw Error(ErrorCode::kEmptyMap, "CAM stack has a zero dimension");
  }
}

void CamStack::Insert(int class_id, Cam cam) {
  if (class_id < 1 || class_id > kMaxClassId) {
    throw Error(ErrorCode::kLabelOutOfRange,
                "class id " + std::to_string(class_id) + " outside 1..254");
  }
  if (cam.height() != height_ || cam.width() != width_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "CAM for class " + std::to_string(class_id) +
                    " does not match stack dimensions");
  }
  if (!entries_.emplace(class_id, std::move(cam)).second) {
    throw Error(ErrorCode::kClassSetMismatch,
                "duplicate class id " + std::to_string(class_id));
  }
}

std::vector<int> CamStack::class_ids() const {
  std::vector<int> ids;
  ids.reserve(entries_.size());
  for (const auto& [id, cam] : entries_) ids.push_back(id);
  return ids;
}

const Cam& CamStack::at(int class_id) const {
  auto it = entries_.find(class_id);
  if (it == entries_.end()) {
    throw Error(ErrorCode::kClassSetMismatch,
                "class " + std::to_string(class_id) + " not in stack " +
                    image_id_);
  }
  return it->second;
}

PseudoMask::PseudoMask(Grid<std::uint8_t> labels) : labels_(std::move(labels)) {
  if (labels_.height() <= 0 || labels_.width() <= 0) {
    throw Error(ErrorCode::kEmptyMap, "mask has a zero dimension");
  }
}

std::vector<std::uint8_t> PseudoMask::present_labels() const {
  std::array<bool, 256> seen{};
  for (std::uint8_t v : labels_.values()) seen[v] = true;
  std::vector<std::uint8_t> out;
  for (int i = 0; i < 256; ++i) {
    if (seen[i]) out.push_back(static_cast<std::uint8_t>(i));
  }
  return out;
}

std::string_view FusionModeName(FusionMode mode) {
  switch (mode) {
    case FusionMode::kOr: return "or";
    case FusionMode::kAnd: return "and";
    case FusionMode::kAverage: return "avg";
  }
  return "?";
}

FusionMode ParseFusionMode(std::string_view name) {
  if (name == "or") return FusionMode::kOr;
  if (name == "and") return FusionMode::kAnd;
  if (name == "avg") return FusionMode::kAverage;
  throw Error(ErrorCode::kConfigError,
              "unknown fusion mode '" + std::string(name) + "'");
}

Cam NormalizeCam(const RawMap& raw) {
  const double m = raw.max();
  std::vector<double> out(raw.grid().values().begin(),
                          raw.grid().values().end());
  if (m > 0.0) {
    for (double& v : out) v /= m;
  } else {
    std::fill(out.begin(), out.end(), 0.0);
  }
  return Cam(raw.height(), raw.width(), std::move(out));
}

RawMap ProbabilisticOrRaw(const Cam& c1, const Cam& c2) {
  return PixelWise(c1, c2, [](double a, double b) { return a + b - a * b; });
}

RawMap ProbabilisticAndRaw(const Cam& c1, const Cam& c2) {
  return PixelWise(c1, c2, [](double a, double b) { return a * b; });
}

RawMap AverageRaw(const Cam& c1, const Cam& c2) {
  return PixelWise(c1, c2, [](double a, double b) { return (a + b) / 2.0; });
}

RawMap FuseRaw(const Cam& c1, const Cam& c2, FusionMode mode) {
  switch (mode) {
    case FusionMode::kOr: return ProbabilisticOrRaw(c1, c2);
    case FusionMode::kAnd: return ProbabilisticAndRaw(c1, c2);
    case FusionMode::kAverage: return AverageRaw(c1, c2);
  }
  throw Error(ErrorCode::kConfigError, "bad fusion mode");
}

Cam FuseOr(const Cam& c1, const Cam& c2) {
  return NormalizeCam(ProbabilisticOrRaw(c1, c2));
}

Cam FuseAnd(const Cam& c1, const Cam& c2) {
  return NormalizeCam(ProbabilisticAndRaw(c1, c2));
}

Cam FuseAverage(const Cam& c1, const Cam& c2) {
  return NormalizeCam(AverageRaw(c1, c2));
}

Cam Fuse(const Cam& c1, const Cam& c2, FusionMode mode) {
  return NormalizeCam(FuseRaw(c1, c2, mode));
}

CamStack StackFuse(const CamStack& s1, const CamStack& s2, FusionMode mode) {
  if (s1.image_id() != s2.image_id()) {
    throw Error(ErrorCode::kClassSetMismatch,
                "stacks belong to different images: " + s1.image_id() +
                    " vs " + s2.image_id());
  }
  if (s1.height() != s2.height() || s1.width() != s2.width()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "stacks for " + s1.image_id() + " differ in size");
  }
  if (s1.class_ids() != s2.class_ids()) {
    throw Error(ErrorCode::kClassSetMismatch,
                "stacks for " + s1.image_id() + " carry different classes");
  }
  CamStack out(s1.image_id(), s1.height(), s1.width());
  for (const auto& [id, cam] : s1.entries()) {
    out.Insert(id, Fuse(cam, s2.at(id), mode));
  }
  return out;
}

PseudoMask ToPseudoMask(const CamStack& stack, double bg_threshold) {
  if (stack.empty()) {
    throw Error(ErrorCode::kEmptyStack,
                "no class maps for image " + stack.image_id());
  }
  if (!(bg_threshold > 0.0 && bg_threshold < 1.0)) {
    throw Error(ErrorCode::kInvalidValue,
                "background threshold must lie in (0, 1)");
  }
  const int h = stack.height();
  const int w = stack.width();
  Grid<double> best(h, w, bg_threshold);
  Grid<std::uint8_t> labels(h, w, kBackgroundLabel);
  // Ascending class order plus strict comparison keeps the earliest winner.
  for (const auto& [id, cam] : stack.entries()) {
    const auto scores = cam.grid().values();
    for (std::size_t i = 0; i < scores.size(); ++i) {
      if (scores[i] > best[i]) {
        best[i] = scores[i];
        labels[i] = static_cast<std::uint8_t>(id);
      }
    }
  }
  return PseudoMask(std::move(labels));
}

}  // namespace camforge
