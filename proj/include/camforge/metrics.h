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
#ifndef CAMFORGE_METRICS_H_
#define CAMFORGE_METRICS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "camforge/cam.h"

namespace camforge {

// (C+1) x (C+1) table, rows = ground truth, columns = prediction.
class ConfusionMatrix {
 public:
  // num_classes_incl_bg = C + 1; must lie in 1..255.
  explicit ConfusionMatrix(int num_classes_incl_bg);

  int num_classes() const noexcept { return n_; }
  std::uint64_t count(int gt, int pred) const {
    return counts_[static_cast<std::size_t>(gt) * n_ + pred];
  }
  std::uint64_t total() const noexcept;

  std::uint64_t true_positives(int k) const { return count(k, k); }
  std::uint64_t false_positives(int k) const;  // column sum minus TP
  std::uint64_t false_negatives(int k) const;  // row sum minus TP

  // Adds one pixel pair per non-ignore ground-truth pixel. Throws
  // DimensionMismatch or LabelOutOfRange; the matrix is left untouched on
  // error.
  void Accumulate(const PseudoMask& pred, const PseudoMask& gt);

  // Associative merge of another matrix of the same size.
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);

  friend bool operator==(const ConfusionMatrix&,
                         const ConfusionMatrix&) = default;

 private:
  int n_;
  std::vector<std::uint64_t> counts_;
};

// Functional form of ConfusionMatrix::Accumulate.
ConfusionMatrix Accumulate(ConfusionMatrix cm, const PseudoMask& pred,
                           const PseudoMask& gt);

struct MetricOptions {
  // Whether background enters the precision / recall means. It always
  // enters the mIoU.
  bool include_background_in_pr = true;
};

// All values are percentages. std::nullopt marks an empty denominator.
struct MetricReport {
  std::vector<std::optional<double>> per_class_iou;
  std::vector<std::optional<double>> per_class_precision;
  std::vector<std::optional<double>> per_class_recall;
  double miou = 0.0;
  double mean_precision = 0.0;
  double mean_recall = 0.0;
  std::uint64_t pixel_count = 0;
};

// IoU_k = TP / (TP + FP + FN) as a percentage.
std::vector<std::optional<double>> PerClassIou(const ConfusionMatrix& cm);
std::vector<std::optional<double>> PerClassPrecision(const ConfusionMatrix& cm);
std::vector<std::optional<double>> PerClassRecall(const ConfusionMatrix& cm);

// Throws EmptyMatrix when nothing has been accumulated.
MetricReport Summarize(const ConfusionMatrix& cm,
                       const MetricOptions& options = {});

}  // namespace camforge

#endif  // CAMFORGE_METRICS_H_
