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
#include "camforge/metrics.h"

#include <numeric>
#include <string>

namespace camforge {
namespace {

std::optional<double> Ratio(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return std::nullopt;
  return 100.0 * static_cast<double>(num) / static_cast<double>(den);
}

double MeanDefined(const std::vector<std::optional<double>>& values,
                   std::size_t first) {
  double sum = 0.0;
  int n = 0;
  for (std::size_t k = first; k < values.size(); ++k) {
    if (values[k]) {
      sum += *values[k];
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / n;
}

}  // namespace

ConfusionMatrix::ConfusionMatrix(int num_classes_incl_bg)
    : n_(num_classes_incl_bg) {
  if (n_ < 1 || n_ > 255) {
    throw Error(ErrorCode::kLabelOutOfRange,
                "confusion matrix size must lie in 1..255");
  }
  counts_.assign(static_cast<std::size_t>(n_) * n_, 0);
}

std::uint64_t ConfusionMatrix::total() const noexcept {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

std::uint64_t ConfusionMatrix::false_positives(int k) const {
  std::uint64_t col = 0;
  for (int g = 0; g < n_; ++g) col += count(g, k);
  return col - count(k, k);
}

std::uint64_t ConfusionMatrix::false_negatives(int k) const {
  std::uint64_t row = 0;
  for (int p = 0; p < n_; ++p) row += count(k, p);
  return row - count(k, k);
}

void ConfusionMatrix::Accumulate(const PseudoMask& pred,
                                 const PseudoMask& gt) {
  if (!pred.labels().same_shape(gt.labels())) {
    throw Error(ErrorCode::kDimensionMismatch,
                "prediction and ground truth differ in size");
  }
  const auto p = pred.labels().values();
  const auto g = gt.labels().values();
  // Validate first so a failed call leaves the counts unchanged.
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == kIgnoreLabel) continue;
    if (g[i] >= n_ || p[i] >= n_) {
      throw Error(ErrorCode::kLabelOutOfRange,
                  "label " + std::to_string(g[i] >= n_ ? g[i] : p[i]) +
                      " outside 0.." + std::to_string(n_ - 1));
    }
  }
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i] == kIgnoreLabel) continue;
    ++counts_[static_cast<std::size_t>(g[i]) * n_ + p[i]];
  }
}

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  if (other.n_ != n_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot merge confusion matrices of different sizes");
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    counts_[i] += other.counts_[i];
  }
  return *this;
}

ConfusionMatrix Accumulate(ConfusionMatrix cm, const PseudoMask& pred,
                           const PseudoMask& gt) {
  cm.Accumulate(pred, gt);
  return cm;
}

std::vector<std::optional<double>> PerClassIou(const ConfusionMatrix& cm) {
  std::vector<std::optional<double>> out(cm.num_classes());
  for (int k = 0; k < cm.num_classes(); ++k) {
    const auto tp = cm.true_positives(k);
    out[k] = Ratio(tp, tp + cm.false_positives(k) + cm.false_negatives(k));
  }
  return out;
}

std::vector<std::optional<double>> PerClassPrecision(
    const ConfusionMatrix& cm) {
  std::vector<std::optional<double>> out(cm.num_classes());
  for (int k = 0; k < cm.num_classes(); ++k) {
    const auto tp = cm.true_positives(k);
    out[k] = Ratio(tp, tp + cm.false_positives(k));
  }
  return out;
}

std::vector<std::optional<double>> PerClassRecall(const ConfusionMatrix& cm) {
  std::vector<std::optional<double>> out(cm.num_classes());
  for (int k = 0; k < cm.num_classes(); ++k) {
    const auto tp = cm.true_positives(k);
    out[k] = Ratio(tp, tp + cm.false_negatives(k));
  }
  return out;
}

MetricReport Summarize(const ConfusionMatrix& cm,
                       const MetricOptions& options) {
  MetricReport r;
  r.pixel_count = cm.total();
  if (r.pixel_count == 0) {
    throw Error(ErrorCode::kEmptyMatrix, "no pixels accumulated");
  }
  r.per_class_iou = PerClassIou(cm);
  r.per_class_precision = PerClassPrecision(cm);
  r.per_class_recall = PerClassRecall(cm);
  const std::size_t first = options.include_background_in_pr ? 0 : 1;
  r.miou = MeanDefined(r.per_class_iou, 0);
  r.mean_precision = MeanDefined(r.per_class_precision, first);
  r.mean_recall = MeanDefined(r.per_class_recall, first);
  return r;
}

}  // namespace camforge
