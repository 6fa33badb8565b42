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
#include "camforge/curriculum.h"

#include <array>
#include <string>

namespace camforge::curriculum {
namespace {

[[noreturn]] void BadSchedule(const std::string& what) {
  throw Error(ErrorCode::kInvalidSchedule, "scale schedule: " + what);
}

void CheckDivisible(int h, int w, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kIndivisibleDimensions, "factor must be >= 1");
  }
  if (h % factor != 0 || w % factor != 0) {
    throw Error(ErrorCode::kIndivisibleDimensions,
                std::to_string(h) + "x" + std::to_string(w) +
                    " is not divisible by " + std::to_string(factor));
  }
}

bool IsPowerOfTwo(int v) { return v >= 1 && (v & (v - 1)) == 0; }

}  // namespace

void ScaleSchedule::Validate() const {
  int next = 1;
  int prev_factor = 0;
  for (const auto& e : entries) {
    if (e.first_epoch != next) {
      BadSchedule("range starting at epoch " + std::to_string(e.first_epoch) +
                  " should start at " + std::to_string(next));
    }
    if (e.last_epoch < e.first_epoch) BadSchedule("empty epoch range");
    if (!IsPowerOfTwo(e.factor)) {
      BadSchedule("factor " + std::to_string(e.factor) +
                  " is not a power of two");
    }
    if (prev_factor != 0 && e.factor > prev_factor) {
      BadSchedule("factors must not increase");
    }
    prev_factor = e.factor;
    next = e.last_epoch + 1;
  }
}

ScaleSchedule DefaultSchedule() {
  return MakeSchedule({8, 4, 2}, {2, 4, 6}, BoundaryMode::kCumulative);
}

BoundaryMode ParseBoundaryMode(std::string_view name) {
  if (name == "cumulative") return BoundaryMode::kCumulative;
  if (name == "durations") return BoundaryMode::kDurations;
  throw Error(ErrorCode::kConfigError,
              "unknown boundary mode '" + std::string(name) + "'");
}

std::string_view BoundaryModeName(BoundaryMode mode) {
  return mode == BoundaryMode::kCumulative ? "cumulative" : "durations";
}

ScaleSchedule MakeSchedule(const std::vector<int>& factors,
                           const std::vector<int>& boundaries,
                           BoundaryMode mode) {
  if (factors.size() != boundaries.size()) {
    BadSchedule("factors and boundaries differ in length");
  }
  ScaleSchedule s;
  int first = 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const int last = mode == BoundaryMode::kCumulative
                         ? boundaries[i]
                         : first + boundaries[i] - 1;
    s.entries.push_back({first, last, factors[i]});
    first = last + 1;
  }
  s.Validate();
  return s;
}

int ScheduleFactor(const ScaleSchedule& schedule, int epoch) {
  if (epoch < 1) {
    throw Error(ErrorCode::kInvalidValue, "epochs are numbered from 1");
  }
  for (const auto& e : schedule.entries) {
    if (epoch >= e.first_epoch && epoch <= e.last_epoch) return e.factor;
  }
  return 1;
}

RgbImage DownsampleImage(const RgbImage& image, int factor) {
  CheckDivisible(image.height, image.width, factor);
  if (factor == 1) return image;
  const int oh = image.height / factor;
  const int ow = image.width / factor;
  const int area = factor * factor;
  RgbImage out(oh, ow);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      for (int c = 0; c < 3; ++c) {
        int sum = 0;
        for (int dy = 0; dy < factor; ++dy) {
          for (int dx = 0; dx < factor; ++dx) {
            sum += image.at(y * factor + dy, x * factor + dx, c);
          }
        }
        out.at(y, x, c) = static_cast<std::uint8_t>((sum + area / 2) / area);
      }
    }
  }
  return out;
}

PseudoMask DownsampleMask(const PseudoMask& mask, int factor) {
  CheckDivisible(mask.height(), mask.width(), factor);
  if (factor == 1) return mask;
  const int oh = mask.height() / factor;
  const int ow = mask.width() / factor;
  Grid<std::uint8_t> out(oh, ow, 0);
  std::array<int, 256> hist{};
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      hist.fill(0);
      for (int dy = 0; dy < factor; ++dy) {
        for (int dx = 0; dx < factor; ++dx) {
          ++hist[mask.at(y * factor + dy, x * factor + dx)];
        }
      }
      int best = 0;
      for (int v = 1; v < 256; ++v) {
        if (hist[v] > hist[best]) best = v;
      }
      out.at(y, x) = static_cast<std::uint8_t>(best);
    }
  }
  return PseudoMask(std::move(out));
}

RgbImage CenterCrop(const RgbImage& image, int factor) {
  const int h = image.height / factor * factor;
  const int w = image.width / factor * factor;
  if (h == image.height && w == image.width) return image;
  if (h == 0 || w == 0) {
    throw Error(ErrorCode::kIndivisibleDimensions,
                "image smaller than the downsampling factor");
  }
  const int y0 = (image.height - h) / 2;
  const int x0 = (image.width - w) / 2;
  RgbImage out(h, w);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int c = 0; c < 3; ++c) out.at(y, x, c) = image.at(y + y0, x + x0, c);
    }
  }
  return out;
}

PseudoMask CenterCrop(const PseudoMask& mask, int factor) {
  const int h = mask.height() / factor * factor;
  const int w = mask.width() / factor * factor;
  if (h == mask.height() && w == mask.width()) return mask;
  if (h == 0 || w == 0) {
    throw Error(ErrorCode::kIndivisibleDimensions,
                "mask smaller than the downsampling factor");
  }
  const int y0 = (mask.height() - h) / 2;
  const int x0 = (mask.width() - w) / 2;
  Grid<std::uint8_t> out(h, w, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) out.at(y, x) = mask.at(y + y0, x + x0);
  }
  return PseudoMask(std::move(out));
}

std::vector<ImagePair> BuildEpochDataset(const std::vector<ImagePair>& pairs,
                                         const ScaleSchedule& schedule,
                                         int epoch) {
  const int f = ScheduleFactor(schedule, epoch);
  std::vector<ImagePair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    if (p.image.height != p.mask.height() || p.image.width != p.mask.width()) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "image and mask of a pair differ in size");
    }
    out.push_back({DownsampleImage(CenterCrop(p.image, f), f),
                   DownsampleMask(CenterCrop(p.mask, f), f)});
  }
  return out;
}

}  // namespace camforge::curriculum
