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
#include "camforge/orand/train.h"

#include <cmath>
#include <algorithm>
#include <numeric>
#include <span>
#include <string>

#include "camforge/error.h"
#include "camforge/rng.h"

namespace camforge::orand {

LossResult LossLsBce(const Cam& prediction, const Cam& target,
                     double label_smoothing) {
  if (!prediction.grid().same_shape(target.grid())) {
    throw Error(ErrorCode::kShapeError, "prediction and target differ in size");
  }
  if (!(label_smoothing >= 0.0 && label_smoothing < 0.5)) {
    throw Error(ErrorCode::kInvalidValue, "label smoothing must be in [0, 0.5)");
  }
  const auto p = prediction.grid().values();
  const auto t = target.grid().values();
  const std::size_t n = p.size();
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] <= 0.0 || p[i] >= 1.0) {
      throw Error(ErrorCode::kDomainError,
                  "prediction saturated at 0 or 1; log loss undefined");
    }
    if (t[i] >= 0.5) ++n_pos;
  }
  const std::size_t n_neg = n - n_pos;
  double w_pos = 1.0;
  double w_neg = 1.0;
  if (n_pos > 0 && n_neg > 0) {
    w_pos = static_cast<double>(n) / (2.0 * static_cast<double>(n_pos));
    w_neg = static_cast<double>(n) / (2.0 * static_cast<double>(n_neg));
  }
  const double eps = label_smoothing;
  LossResult r;
  r.d_prediction = Grid<double>(prediction.height(), prediction.width());
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ts = (1.0 - eps) * t[i] + eps / 2.0;
    const double w = t[i] >= 0.5 ? w_pos : w_neg;
    sum += -w * (ts * std::log(p[i]) + (1.0 - ts) * std::log1p(-p[i]));
    r.d_prediction[i] =
        -w * (ts / p[i] - (1.0 - ts) / (1.0 - p[i])) / static_cast<double>(n);
  }
  r.loss = sum / static_cast<double>(n);
  return r;
}

double PolyLr(double lr0, long step, long total_steps, double power) {
  const double frac = 1.0 - static_cast<double>(step) /
                                static_cast<double>(total_steps);
  return lr0 * std::pow(frac < 0.0 ? 0.0 : frac, power);
}

void SgdStep(FcnParams* params, const ParamGrads& grads, double lr,
             double momentum, double weight_decay, SgdState* state) {
  if (grads.convs.size() != params->convs.size()) {
    throw Error(ErrorCode::kShapeMismatch,
                "gradient and parameter layer counts differ");
  }
  for (std::size_t l = 0; l < grads.convs.size(); ++l) {
    if (!grads.convs[l].same_shape(params->convs[l])) {
      throw Error(ErrorCode::kShapeMismatch,
                  "gradient shape differs at conv " + std::to_string(l));
    }
  }
  if (state->velocity.empty()) {
    for (const auto& c : params->convs) {
      state->velocity.emplace_back(c.in_channels, c.out_channels, c.kernel);
    }
  }
  auto update = [&](std::vector<double>& w, const std::vector<double>& g,
                    std::vector<double>& v) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      v[i] = momentum * v[i] + (g[i] + weight_decay * w[i]);
      w[i] -= lr * v[i];
    }
  };
  for (std::size_t l = 0; l < grads.convs.size(); ++l) {
    update(params->convs[l].weight, grads.convs[l].weight,
           state->velocity[l].weight);
    update(params->convs[l].bias, grads.convs[l].bias,
           state->velocity[l].bias);
  }
}

void TrainConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kConfigError, "train config: " + what);
  };
  // lr0 = 0 is accepted so a frozen run can be used as a baseline.
  if (!(lr0 >= 0.0) || !std::isfinite(lr0)) fail("lr0 must be >= 0");
  if (!(label_smoothing >= 0.0 && label_smoothing < 0.5)) {
    fail("label_smoothing must be in [0, 0.5)");
  }
  if (!(momentum >= 0.0 && momentum < 1.0)) fail("momentum must be in [0, 1)");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be >= 0");
  if (!(poly_power >= 0.0)) fail("poly_power must be >= 0");
  if (batch_size < 1) fail("batch_size must be >= 1");
  if (epochs < 1) fail("epochs must be >= 1");
  if (total_steps < 0) fail("total_steps must be >= 0");
}

TrainResult Train(const std::vector<TrainSample>& dataset,
                  const TrainConfig& config, const FcnArchitecture& arch) {
  config.Validate();
  if (dataset.empty()) {
    throw Error(ErrorCode::kEmptyDataset, "no training samples");
  }
  const int h = dataset.front().input.height();
  const int w = dataset.front().input.width();
  for (const auto& s : dataset) {
    if (s.input.height() != h || s.input.width() != w ||
        s.target.height() != h || s.target.width() != w) {
      throw Error(ErrorCode::kShapeError,
                  "training samples must share one size");
    }
  }

  TrainResult result;
  result.params = InitParams(arch, DeriveSeed(config.seed, 0));
  Rng shuffler(DeriveSeed(config.seed, 1));

  const int n = static_cast<int>(dataset.size());
  const long batches_per_epoch = (n + config.batch_size - 1) / config.batch_size;
  const long total = config.total_steps > 0
                         ? config.total_steps
                         : static_cast<long>(config.epochs) * batches_per_epoch;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  SgdState state;
  long step = 0;

  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffler.Shuffle(std::span<int>(order));
    EpochRecord rec;
    rec.epoch = epoch;
    rec.lr = PolyLr(config.lr0, std::min(step, total), total,
                    config.poly_power);
    double loss_sum = 0.0;
    for (int start = 0; start < n; start += config.batch_size) {
      const int end = std::min(n, start + config.batch_size);
      ParamGrads grads = ZeroGrads(result.params);
      for (int b = start; b < end; ++b) {
        const TrainSample& s = dataset[order[b]];
        ForwardResult fwd = Forward(result.params, s.input);
        LossResult lr = LossLsBce(fwd.prediction, s.target,
                                  config.label_smoothing);
        loss_sum += lr.loss;
        BackwardInto(result.params, fwd.cache, lr.d_prediction, &grads);
      }
      const double scale = 1.0 / static_cast<double>(end - start);
      for (auto& c : grads.convs) {
        for (double& g : c.weight) g *= scale;
        for (double& g : c.bias) g *= scale;
      }
      const double lr_now =
          PolyLr(config.lr0, std::min(step, total), total, config.poly_power);
      SgdStep(&result.params, grads, lr_now, config.momentum,
              config.weight_decay, &state);
      ++step;
    }
    rec.mean_loss = loss_sum / n;
    result.history.push_back(rec);
  }
  return result;
}

Cam Infer(const FcnParams& params, const Cam& or_cam) {
  ForwardResult fwd = Forward(params, or_cam);
  return NormalizeCam(RawMap(fwd.prediction.grid()));
}

CamStack InferStack(const FcnParams& params, const CamStack& or_stack) {
  CamStack out(or_stack.image_id(), or_stack.height(), or_stack.width());
  for (const auto& [id, cam] : or_stack.entries()) {
    out.Insert(id, Infer(params, cam));
  }
  return out;
}

}  // namespace camforge::orand
