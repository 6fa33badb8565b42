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
#ifndef CAMFORGE_ORAND_TRAIN_H_
#define CAMFORGE_ORAND_TRAIN_H_

#include <cstdint>
#include <string>
#include <vector>

#include "camforge/cam.h"
#include "camforge/orand/network.h"

namespace camforge::orand {

struct LossResult {
  double loss = 0.0;
  Grid<double> d_prediction;
};

// Class-balanced binary cross entropy against label-smoothed soft targets.
//
//   t'   = (1 - eps) * t + eps / 2
//   w(p) = N / (2 * N_pos) where t >= 0.5, N / (2 * N_neg) elsewhere,
//          and 1 everywhere if either count is zero
//   loss = mean_p  -w(p) * [t' ln(pred) + (1 - t') ln(1 - pred)]
//
// Throws DomainError if any prediction is exactly 0 or 1, ShapeError on a
// size mismatch and InvalidValue for eps outside [0, 0.5).
LossResult LossLsBce(const Cam& prediction, const Cam& target,
                     double label_smoothing);

// lr0 * (1 - step / total_steps)^power.
double PolyLr(double lr0, long step, long total_steps, double power);

struct SgdState {
  std::vector<ConvTensors> velocity;  // empty until the first step
};

// v <- momentum * v + (g + weight_decay * w); w <- w - lr * v.
// Throws ShapeMismatch when grads and params disagree in layout.
void SgdStep(FcnParams* params, const ParamGrads& grads, double lr,
             double momentum, double weight_decay, SgdState* state);

struct TrainConfig {
  double lr0 = 0.001;
  double poly_power = 0.9;
  double momentum = 0.9;
  double weight_decay = 0.0;
  double label_smoothing = 0.1;
  int batch_size = 1;
  int epochs = 200;
  // 0 derives epochs * ceil(dataset / batch_size).
  long total_steps = 0;
  std::uint64_t seed = 0;

  // Throws ConfigError for out-of-range values.
  void Validate() const;
};

struct TrainSample {
  Cam input;   // OR map
  Cam target;  // AND map
  int class_id = 0;
  std::string image_id;
};

struct EpochRecord {
  int epoch = 0;
  double mean_loss = 0.0;
  double lr = 0.0;  // at the first step of the epoch
};

struct TrainResult {
  FcnParams params;
  std::vector<EpochRecord> history;
};

// Seeded mini-batch SGD over shuffled samples. Batch gradients are the mean
// of per-sample gradients, summed in sample order.
TrainResult Train(const std::vector<TrainSample>& dataset,
                  const TrainConfig& config,
                  const FcnArchitecture& arch = DefaultArchitecture());

// Forward pass followed by max normalization.
Cam Infer(const FcnParams& params, const Cam& or_cam);

// Infers every class map in the stack.
CamStack InferStack(const FcnParams& params, const CamStack& or_stack);

}  // namespace camforge::orand

#endif  // CAMFORGE_ORAND_TRAIN_H_
