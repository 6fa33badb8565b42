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
#ifndef CAMFORGE_CAM_H_
#define CAMFORGE_CAM_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "camforge/grid.h"

namespace camforge {

inline constexpr std::uint8_t kBackgroundLabel = 0;
inline constexpr std::uint8_t kIgnoreLabel = 255;
inline constexpr int kMaxClassId = 254;

// Non-negative, finite activation map as produced by a classifier, before
// max normalization. No upper bound.
class RawMap {
 public:
  RawMap() = default;
  // Throws EmptyMap, NonFiniteInput or InvalidValue (negative entries).
  explicit RawMap(Grid<double> values);
  RawMap(int height, int width, std::vector<double> values)
      : RawMap(Grid<double>(height, width, std::move(values))) {}

  int height() const noexcept { return grid_.height(); }
  int width() const noexcept { return grid_.width(); }
  const Grid<double>& grid() const noexcept { return grid_; }
  double at(int row, int col) const { return grid_.at(row, col); }
  double max() const;

  friend bool operator==(const RawMap&, const RawMap&) = default;

 private:
  Grid<double> grid_;
};

// Single-class activation map with every value in [0, 1].
class Cam {
 public:
  Cam() = default;
  // Throws EmptyMap, NonFiniteInput or InvalidValue (outside [0, 1]).
  explicit Cam(Grid<double> values);
  Cam(int height, int width, std::vector<double> values)
      : Cam(Grid<double>(height, width, std::move(values))) {}

  static Cam Zeros(int height, int width);

  int height() const noexcept { return grid_.height(); }
  int width() const noexcept { return grid_.width(); }
  const Grid<double>& grid() const noexcept { return grid_; }
  double at(int row, int col) const { return grid_.at(row, col); }
  double max() const;

  friend bool operator==(const Cam&, const Cam&) = default;

 private:
  Grid<double> grid_;
};

// Per-image set of CAMs keyed by class id (1..254). All members share one
// height and width.
class CamStack {
 public:
  CamStack() = default;
  CamStack(std::string image_id, int height, int width);

  // Throws DimensionMismatch for a wrongly sized map, LabelOutOfRange for a
  // class id outside 1..254, ClassSetMismatch for a duplicate id.
  void Insert(int class_id, Cam cam);

  const std::string& image_id() const noexcept { return image_id_; }
  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  bool empty() const noexcept { return entries_.empty(); }
  std::size_t size() const noexcept { return entries_.size(); }
  std::vector<int> class_ids() const;
  bool contains(int class_id) const { return entries_.count(class_id) > 0; }
  const Cam& at(int class_id) const;
  const std::map<int, Cam>& entries() const noexcept { return entries_; }

  friend bool operator==(const CamStack&, const CamStack&) = default;

 private:
  std::string image_id_;
  int height_ = 0;
  int width_ = 0;
  std::map<int, Cam> entries_;
};

// 8-bit label map: 0 = background, 1..C = classes, 255 = ignore.
class PseudoMask {
 public:
  PseudoMask() = default;
  explicit PseudoMask(Grid<std::uint8_t> labels);
  PseudoMask(int height, int width, std::uint8_t fill = kBackgroundLabel)
      : PseudoMask(Grid<std::uint8_t>(height, width, fill)) {}

  int height() const noexcept { return labels_.height(); }
  int width() const noexcept { return labels_.width(); }
  std::uint8_t at(int row, int col) const { return labels_.at(row, col); }
  std::uint8_t& at(int row, int col) { return labels_.at(row, col); }
  const Grid<std::uint8_t>& labels() const noexcept { return labels_; }
  Grid<std::uint8_t>& labels() noexcept { return labels_; }

  // Distinct labels present, ascending.
  std::vector<std::uint8_t> present_labels() const;

  friend bool operator==(const PseudoMask&, const PseudoMask&) = default;

 private:
  Grid<std::uint8_t> labels_;
};

enum class FusionMode { kOr, kAnd, kAverage };

std::string_view FusionModeName(FusionMode mode);
// Accepts "or", "and", "avg". Throws ConfigError otherwise.
FusionMode ParseFusionMode(std::string_view name);

// raw / max(raw); an all-zero map stays all zero.
Cam NormalizeCam(const RawMap& raw);

// Pre-normalization fusion results, per pixel:
//   or:  c1 + c2 - c1 * c2
//   and: c1 * c2
//   avg: (c1 + c2) / 2
// All throw DimensionMismatch when the operands differ in shape.
RawMap ProbabilisticOrRaw(const Cam& c1, const Cam& c2);
RawMap ProbabilisticAndRaw(const Cam& c1, const Cam& c2);
RawMap AverageRaw(const Cam& c1, const Cam& c2);
RawMap FuseRaw(const Cam& c1, const Cam& c2, FusionMode mode);

Cam FuseOr(const Cam& c1, const Cam& c2);
Cam FuseAnd(const Cam& c1, const Cam& c2);
Cam FuseAverage(const Cam& c1, const Cam& c2);
Cam Fuse(const Cam& c1, const Cam& c2, FusionMode mode);

// Class-wise fusion. Both stacks must carry the same image id, dimensions
// and class set.
CamStack StackFuse(const CamStack& s1, const CamStack& s2, FusionMode mode);

inline constexpr double kDefaultBackgroundThreshold = 0.25;

// Per-pixel argmax over a constant background score and the class maps.
// Background wins exact ties; among classes the lowest id wins.
PseudoMask ToPseudoMask(const CamStack& stack,
                        double bg_threshold = kDefaultBackgroundThreshold);

}  // namespace camforge

#endif  // CAMFORGE_CAM_H_
