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
#include "camforge/orand/network.h"

#include <cmath>
#include <string>

#include "camforge/error.h"
#include "camforge/rng.h"

namespace camforge::orand {
namespace {

[[noreturn]] void Invalid(const std::string& what) {
  throw Error(ErrorCode::kInvalidArchitecture, what);
}

std::size_t CountOf(const std::vector<ConvTensors>& convs) {
  std::size_t n = 0;
  for (const auto& c : convs) n += c.weight.size() + c.bias.size();
  return n;
}

}  // namespace

std::string_view LayerKindName(LayerKind kind) {
  switch (kind) {
    case LayerKind::kConv: return "conv";
    case LayerKind::kRelu: return "relu";
    case LayerKind::kMaxPool: return "maxpool";
    case LayerKind::kUpsample: return "upsample";
    case LayerKind::kSigmoid: return "sigmoid";
  }
  return "?";
}

LayerKind ParseLayerKind(std::string_view name) {
  for (auto k : {LayerKind::kConv, LayerKind::kRelu, LayerKind::kMaxPool,
                 LayerKind::kUpsample, LayerKind::kSigmoid}) {
    if (LayerKindName(k) == name) return k;
  }
  Invalid("unknown layer type '" + std::string(name) + "'");
}

void FcnArchitecture::Validate() const {
  if (layers.empty()) Invalid("architecture has no layers");
  if (layers.front().kind != LayerKind::kConv ||
      layers.front().in_channels != 1) {
    Invalid("first layer must be a conv consuming 1 channel");
  }
  int channels = 1;
  int pooled = 1;
  int upsampled = 1;
  for (std::size_t i = 0; i < layers.size(); ++i) {
    const LayerSpec& l = layers[i];
    switch (l.kind) {
      case LayerKind::kConv:
        if (l.kernel != 1 && l.kernel != 3) {
          Invalid("layer " + std::to_string(i) + ": kernel must be 1 or 3");
        }
        if (l.in_channels != channels) {
          Invalid("layer " + std::to_string(i) + ": expects " +
                  std::to_string(l.in_channels) + " channels, receives " +
                  std::to_string(channels));
        }
        if (l.out_channels < 1) {
          Invalid("layer " + std::to_string(i) + ": no output channels");
        }
        channels = l.out_channels;
        break;
      case LayerKind::kMaxPool:
        pooled *= 2;
        break;
      case LayerKind::kUpsample:
        if (l.factor < 1) {
          Invalid("layer " + std::to_string(i) + ": upsample factor < 1");
        }
        upsampled *= l.factor;
        break;
      case LayerKind::kSigmoid:
        if (i + 1 != layers.size()) Invalid("sigmoid must be the last layer");
        break;
      case LayerKind::kRelu:
        break;
    }
  }
  if (layers.back().kind != LayerKind::kSigmoid) {
    Invalid("last layer must be a sigmoid");
  }
  if (channels != 1) Invalid("network must emit exactly 1 channel");
  if (pooled != upsampled) {
    Invalid("pooling by " + std::to_string(pooled) + " is not undone by " +
            "upsampling by " + std::to_string(upsampled));
  }
}

int FcnArchitecture::RequiredDivisor() const {
  // Largest running downsampling factor seen along the stack.
  int worst = 1;
  double scale = 1.0;
  for (const auto& l : layers) {
    if (l.kind == LayerKind::kMaxPool) scale *= 2.0;
    if (l.kind == LayerKind::kUpsample) scale /= l.factor;
    if (scale > worst) worst = static_cast<int>(scale);
  }
  return worst;
}

int FcnArchitecture::ConvCount() const {
  int n = 0;
  for (const auto& l : layers) n += l.kind == LayerKind::kConv;
  return n;
}

FcnArchitecture DefaultArchitecture() {
  return {{
      LayerSpec::Conv(3, 1, 16), LayerSpec::Relu(),
      LayerSpec::Conv(3, 16, 16), LayerSpec::Relu(),
      LayerSpec::MaxPool(),
      LayerSpec::Conv(3, 16, 32), LayerSpec::Relu(),
      LayerSpec::Conv(3, 32, 32), LayerSpec::Relu(),
      LayerSpec::MaxPool(),
      LayerSpec::Conv(3, 32, 32), LayerSpec::Relu(),
      LayerSpec::Upsample(4),
      LayerSpec::Conv(1, 32, 1),
      LayerSpec::Sigmoid(),
  }};
}

FcnArchitecture Vgg16Architecture() {
  FcnArchitecture arch;
  int in = 1;
  const int blocks[5][2] = {{2, 64}, {2, 128}, {3, 256}, {3, 512}, {3, 512}};
  for (int b = 0; b < 5; ++b) {
    for (int i = 0; i < blocks[b][0]; ++i) {
      arch.layers.push_back(LayerSpec::Conv(3, in, blocks[b][1]));
      arch.layers.push_back(LayerSpec::Relu());
      in = blocks[b][1];
    }
    if (b < 4) arch.layers.push_back(LayerSpec::MaxPool());
  }
  arch.layers.push_back(LayerSpec::Conv(1, in, 1));
  arch.layers.push_back(LayerSpec::Upsample(16));
  arch.layers.push_back(LayerSpec::Sigmoid());
  return arch;
}

std::size_t FcnParams::ParameterCount() const { return CountOf(convs); }
std::size_t ParamGrads::ParameterCount() const { return CountOf(convs); }

FcnParams InitParams(const FcnArchitecture& arch, std::uint64_t seed) {
  arch.Validate();
  FcnParams p;
  p.architecture = arch;
  p.seed = seed;
  p.init_scheme = "uniform_fan_in";
  int index = 0;
  for (const auto& l : arch.layers) {
    if (l.kind != LayerKind::kConv) continue;
    ConvTensors c(l.in_channels, l.out_channels, l.kernel);
    const int fan_in = l.in_channels * l.kernel * l.kernel;
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    Rng rng(DeriveSeed(seed, static_cast<std::uint64_t>(index++)));
    for (double& w : c.weight) w = rng.Uniform(-bound, bound);
    p.convs.push_back(std::move(c));
  }
  return p;
}

ParamGrads ZeroGrads(const FcnParams& params) {
  ParamGrads g;
  g.convs.reserve(params.convs.size());
  for (const auto& c : params.convs) {
    g.convs.emplace_back(c.in_channels, c.out_channels, c.kernel);
  }
  return g;
}

Tensor ForwardTensor(const FcnParams& params, const Tensor& input,
                     ForwardCache* cache) {
  const FcnArchitecture& arch = params.architecture;
  const int div = arch.RequiredDivisor();
  if (input.channels != 1 || input.height % div != 0 ||
      input.width % div != 0 || input.height == 0 || input.width == 0) {
    throw Error(ErrorCode::kShapeError,
                "input " + std::to_string(input.height) + "x" +
                    std::to_string(input.width) +
                    " must be single-channel with sides divisible by " +
                    std::to_string(div));
  }
  if (static_cast<int>(params.convs.size()) != arch.ConvCount()) {
    throw Error(ErrorCode::kInvalidArchitecture,
                "parameter set does not match architecture");
  }
  cache->architecture = arch;
  cache->activations.clear();
  cache->activations.reserve(arch.layers.size() + 1);
  cache->pool_argmax.assign(arch.layers.size(), {});
  cache->activations.push_back(input);
  std::size_t conv = 0;
  for (std::size_t i = 0; i < arch.layers.size(); ++i) {
    const Tensor& x = cache->activations.back();
    Tensor y;
    switch (arch.layers[i].kind) {
      case LayerKind::kConv: y = Conv2dForward(x, params.convs[conv++]); break;
      case LayerKind::kRelu: y = ReluForward(x); break;
      case LayerKind::kMaxPool:
        y = MaxPoolForward(x, &cache->pool_argmax[i]);
        break;
      case LayerKind::kUpsample:
        y = UpsampleBilinearForward(x, arch.layers[i].factor);
        break;
      case LayerKind::kSigmoid: y = SigmoidForward(x); break;
    }
    cache->activations.push_back(std::move(y));
  }
  return cache->activations.back();
}

ForwardResult Forward(const FcnParams& params, const Cam& input) {
  Tensor x(1, input.height(), input.width());
  const auto v = input.grid().values();
  std::copy(v.begin(), v.end(), x.data.begin());
  ForwardResult r;
  Tensor y = ForwardTensor(params, x, &r.cache);
  r.prediction = Cam(y.height, y.width, std::move(y.data));
  return r;
}

void BackwardInto(const FcnParams& params, const ForwardCache& cache,
                  const Grid<double>& d_prediction, ParamGrads* grads) {
  const FcnArchitecture& arch = cache.architecture;
  if (!(arch == params.architecture) ||
      cache.activations.size() != arch.layers.size() + 1) {
    throw Error(ErrorCode::kStaleCache,
                "forward cache does not belong to these parameters");
  }
  const Tensor& out = cache.activations.back();
  if (d_prediction.height() != out.height ||
      d_prediction.width() != out.width || out.channels != 1) {
    throw Error(ErrorCode::kStaleCache,
                "upstream gradient does not match the cached prediction");
  }
  if (grads->convs.size() != params.convs.size()) {
    throw Error(ErrorCode::kShapeMismatch, "gradient buffer has wrong layout");
  }
  Tensor d(1, out.height, out.width);
  const auto dv = d_prediction.values();
  std::copy(dv.begin(), dv.end(), d.data.begin());
  std::size_t conv = params.convs.size();
  for (std::size_t i = arch.layers.size(); i-- > 0;) {
    const Tensor& x = cache.activations[i];
    const Tensor& y = cache.activations[i + 1];
    switch (arch.layers[i].kind) {
      case LayerKind::kConv:
        --conv;
        d = Conv2dBackward(x, params.convs[conv], d, &grads->convs[conv]);
        break;
      case LayerKind::kRelu: d = ReluBackward(y, d); break;
      case LayerKind::kMaxPool:
        d = MaxPoolBackward(d, cache.pool_argmax[i], x.height, x.width);
        break;
      case LayerKind::kUpsample:
        d = UpsampleBilinearBackward(d, arch.layers[i].factor, x.height,
                                     x.width);
        break;
      case LayerKind::kSigmoid: d = SigmoidBackward(y, d); break;
    }
  }
}

ParamGrads Backward(const FcnParams& params, const ForwardCache& cache,
                    const Grid<double>& d_prediction) {
  ParamGrads g = ZeroGrads(params);
  BackwardInto(params, cache, d_prediction, &g);
  return g;
}

}  // namespace camforge::orand
