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
#ifndef CAMFORGE_GRID_H_
#define CAMFORGE_GRID_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "camforge/error.h"

namespace camforge {

// Dense row-major 2D array.
template <typename T>
class Grid {
 public:
  Grid() = default;

  Grid(int height, int width, T fill = T{})
      : height_(height), width_(width) {
    if (height < 0 || width < 0) {
      throw Error(ErrorCode::kEmptyMap, "negative grid dimensions");
    }
    values_.assign(static_cast<std::size_t>(height) * width, fill);
  }

  Grid(int height, int width, std::vector<T> values)
      : height_(height), width_(width), values_(std::move(values)) {
    if (height < 0 || width < 0 ||
        values_.size() != static_cast<std::size_t>(height) * width) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "grid of " + std::to_string(height) + "x" +
                      std::to_string(width) + " given " +
                      std::to_string(values_.size()) + " values");
    }
  }

  int height() const noexcept { return height_; }
  int width() const noexcept { return width_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  T& at(int row, int col) {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  const T& at(int row, int col) const {
    return values_[static_cast<std::size_t>(row) * width_ + col];
  }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  std::span<T> values() noexcept { return values_; }
  std::span<const T> values() const noexcept { return values_; }

  template <typename U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return height_ == other.height() && width_ == other.width();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.height_ == b.height_ && a.width_ == b.width_ &&
           a.values_ == b.values_;
  }

 private:
  int height_ = 0;
  int width_ = 0;
  std::vector<T> values_;
};

}  // namespace camforge

#endif  // CAMFORGE_GRID_H_
