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
#ifndef CAMFORGE_ORAND_LAYERS_H_
#define CAMFORGE_ORAND_LAYERS_H_

#include <cstddef>
#include <vector>

namespace camforge::orand {

// Channel-major (C, H, W) activation tensor.
struct Tensor {
  int channels = 0;
  int height = 0;
  int width = 0;
  std::vector<double> data;

  Tensor() = default;
  Tensor(int c, int h, int w, double fill = 0.0)
      : channels(c), height(h), width(w),
        data(static_cast<std::size_t>(c) * h * w, fill) {}

  std::size_t plane() const noexcept {
    return static_cast<std::size_t>(height) * width;
  }
  double* channel(int c) { return data.data() + c * plane(); }
  const double* channel(int c) const { return data.data() + c * plane(); }
  double& at(int c, int y, int x) {
    return data[c * plane() + static_cast<std::size_t>(y) * width + x];
  }
  double at(int c, int y, int x) const {
    return data[c * plane() + static_cast<std::size_t>(y) * width + x];
  }
  bool same_shape(const Tensor& o) const noexcept {
    return channels == o.channels && height == o.height && width == o.width;
  }
};

// Weights laid out (out, in, k, k); stride 1, zero "same" padding.
struct ConvTensors {
  int in_channels = 0;
  int out_channels = 0;
  int kernel = 0;
  std::vector<double> weight;
  std::vector<double> bias;

  ConvTensors() = default;
  ConvTensors(int in, int out, int k)
      : in_channels(in), out_channels(out), kernel(k),
        weight(static_cast<std::size_t>(out) * in * k * k, 0.0),
        bias(static_cast<std::size_t>(out), 0.0) {}

  bool same_shape(const ConvTensors& o) const noexcept {
    return in_channels == o.in_channels && out_channels == o.out_channels &&
           kernel == o.kernel && weight.size() == o.weight.size() &&
           bias.size() == o.bias.size();
  }
  bool operator==(const ConvTensors&) const = default;
  double& w(int o, int i, int ky, int kx) {
    return weight[((static_cast<std::size_t>(o) * in_channels + i) * kernel +
                   ky) * kernel + kx];
  }
};

Tensor Conv2dForward(const Tensor& input, const ConvTensors& conv);
// Accumulates parameter gradients into *grad and returns d(input).
Tensor Conv2dBackward(const Tensor& input, const ConvTensors& conv,
                      const Tensor& d_output, ConvTensors* grad);

Tensor ReluForward(const Tensor& input);
Tensor ReluBackward(const Tensor& output, const Tensor& d_output);

// 2x2 window, stride 2. Throws ShapeError on odd spatial sizes. argmax
// receives, for every output element, the flat input index it came from;
// the first maximum in row-major window order wins ties.
Tensor MaxPoolForward(const Tensor& input, std::vector<std::size_t>* argmax);
Tensor MaxPoolBackward(const Tensor& d_output,
                       const std::vector<std::size_t>& argmax, int in_height,
                       int in_width);

// Bilinear resize by an integer factor, half-pixel centers with edge
// clamping (the align_corners=false convention).
Tensor UpsampleBilinearForward(const Tensor& input, int factor);
Tensor UpsampleBilinearBackward(const Tensor& d_output, int factor,
                                int in_height, int in_width);

Tensor SigmoidForward(const Tensor& input);
Tensor SigmoidBackward(const Tensor& output, const Tensor& d_output);

}  // namespace camforge::orand

#endif  // CAMFORGE_ORAND_LAYERS_H_
