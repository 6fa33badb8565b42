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
#ifndef CAMFORGE_ORAND_NETWORK_H_
#define CAMFORGE_ORAND_NETWORK_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "camforge/cam.h"
#include "camforge/orand/layers.h"

namespace camforge::orand {

enum class LayerKind { kConv, kRelu, kMaxPool, kUpsample, kSigmoid };

std::string_view LayerKindName(LayerKind kind);
LayerKind ParseLayerKind(std::string_view name);

struct LayerSpec {
  LayerKind kind = LayerKind::kRelu;
  int kernel = 0;        // conv: 1 or 3
  int in_channels = 0;   // conv
  int out_channels = 0;  // conv
  int factor = 0;        // upsample

  static LayerSpec Conv(int kernel, int in, int out) {
    return {LayerKind::kConv, kernel, in, out, 0};
  }
  static LayerSpec Relu() { return {LayerKind::kRelu}; }
  static LayerSpec MaxPool() { return {LayerKind::kMaxPool}; }
  static LayerSpec Upsample(int factor) {
    return {LayerKind::kUpsample, 0, 0, 0, factor};
  }
  static LayerSpec Sigmoid() { return {LayerKind::kSigmoid}; }

  friend bool operator==(const LayerSpec&, const LayerSpec&) = default;
};

// Ordered 1-channel-in, 1-channel-out fully convolutional network.
struct FcnArchitecture {
  std::vector<LayerSpec> layers;

  // Throws InvalidArchitecture on channel mismatches, an output size that
  // differs from the input size, or a head other than 1-channel sigmoid.
  void Validate() const;
  // Input height and width must be multiples of this.
  int RequiredDivisor() const;
  int ConvCount() const;

  friend bool operator==(const FcnArchitecture&,
                         const FcnArchitecture&) = default;
};

// conv3(1->16) relu conv3(16->16) relu pool conv3(16->32) relu
// conv3(32->32) relu pool conv3(32->32) relu up x4 conv1(32->1) sigmoid
FcnArchitecture DefaultArchitecture();

// VGG16 convolution stack without batch norm (13 convs, 4 pools), a 1x1
// head and a x16 bilinear upsample.
FcnArchitecture Vgg16Architecture();

// One ConvTensors per conv layer, in layer order.
struct FcnParams {
  FcnArchitecture architecture;
  std::vector<ConvTensors> convs;
  std::uint64_t seed = 0;
  std::string init_scheme;

  std::size_t ParameterCount() const;
};

struct ParamGrads {
  std::vector<ConvTensors> convs;

  std::size_t ParameterCount() const;
};

// Weights ~ U(-1/sqrt(fan_in), 1/sqrt(fan_in)), biases zero.
FcnParams InitParams(const FcnArchitecture& arch, std::uint64_t seed);

// Zero-valued gradients shaped like params.
ParamGrads ZeroGrads(const FcnParams& params);

// Everything backward needs from one forward pass.
struct ForwardCache {
  FcnArchitecture architecture;
  std::vector<Tensor> activations;  // activations[i] feeds layer i
  std::vector<std::vector<std::size_t>> pool_argmax;  // per layer
};

struct ForwardResult {
  Cam prediction;
  ForwardCache cache;
};

// Throws ShapeError when the input size is not a multiple of
// RequiredDivisor().
ForwardResult Forward(const FcnParams& params, const Cam& input);
// Raw tensor entry point, used by gradient checks on unconstrained inputs.
Tensor ForwardTensor(const FcnParams& params, const Tensor& input,
                     ForwardCache* cache);

// Adds the gradient of the loss w.r.t. every parameter into *grads.
// Throws StaleCache if cache, params and d_prediction do not belong
// together.
void BackwardInto(const FcnParams& params, const ForwardCache& cache,
                  const Grid<double>& d_prediction, ParamGrads* grads);
ParamGrads Backward(const FcnParams& params, const ForwardCache& cache,
                    const Grid<double>& d_prediction);

}  // namespace camforge::orand

#endif  // CAMFORGE_ORAND_NETWORK_H_
