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
#include "camforge/orand/layers.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "camforge/error.h"

namespace camforge::orand {
namespace {

struct AxisWeights {
  std::vector<int> lo, hi;
  std::vector<double> w_lo, w_hi;
};

AxisWeights BilinearAxis(int in_size, int factor) {
  const int out_size = in_size * factor;
  AxisWeights a;
  a.lo.resize(out_size);
  a.hi.resize(out_size);
  a.w_lo.resize(out_size);
  a.w_hi.resize(out_size);
  for (int o = 0; o < out_size; ++o) {
    double src = (o + 0.5) / factor - 0.5;
    if (src < 0.0) src = 0.0;
    int i0 = static_cast<int>(std::floor(src));
    if (i0 > in_size - 1) i0 = in_size - 1;
    const int i1 = std::min(i0 + 1, in_size - 1);
    const double frac = src - i0;
    a.lo[o] = i0;
    a.hi[o] = i1;
    a.w_lo[o] = 1.0 - frac;
    a.w_hi[o] = frac;
  }
  return a;
}

void CheckConvInput(const Tensor& input, const ConvTensors& conv) {
  if (input.channels != conv.in_channels) {
    throw Error(ErrorCode::kShapeError,
                "conv expects " + std::to_string(conv.in_channels) +
                    " channels, got " + std::to_string(input.channels));
  }
}

}  // namespace

Tensor Conv2dForward(const Tensor& input, const ConvTensors& conv) {
  CheckConvInput(input, conv);
  const int h = input.height;
  const int w = input.width;
  const int k = conv.kernel;
  const int pad = k / 2;
  Tensor out(conv.out_channels, h, w);
  const double* wt = conv.weight.data();
  for (int co = 0; co < conv.out_channels; ++co) {
    double* op = out.channel(co);
    std::fill(op, op + out.plane(), conv.bias[co]);
    for (int ci = 0; ci < conv.in_channels; ++ci) {
      const double* ip = input.channel(ci);
      for (int ky = 0; ky < k; ++ky) {
        const int dy = ky - pad;
        const int y0 = std::max(0, -dy);
        const int y1 = std::min(h, h - dy);
        for (int kx = 0; kx < k; ++kx, ++wt) {
          const double wv = *wt;
          const int dx = kx - pad;
          const int x0 = std::max(0, -dx);
          const int x1 = std::min(w, w - dx);
          for (int y = y0; y < y1; ++y) {
            double* orow = op + static_cast<std::size_t>(y) * w;
            const double* irow = ip + static_cast<std::size_t>(y + dy) * w + dx;
            for (int x = x0; x < x1; ++x) orow[x] += wv * irow[x];
          }
        }
      }
    }
  }
  return out;
}

Tensor Conv2dBackward(const Tensor& input, const ConvTensors& conv,
                      const Tensor& d_output, ConvTensors* grad) {
  CheckConvInput(input, conv);
  if (d_output.channels != conv.out_channels ||
      d_output.height != input.height || d_output.width != input.width ||
      !grad->same_shape(conv)) {
    throw Error(ErrorCode::kStaleCache, "conv backward shape mismatch");
  }
  const int h = input.height;
  const int w = input.width;
  const int k = conv.kernel;
  const int pad = k / 2;
  Tensor d_input(input.channels, h, w);
  const double* wt = conv.weight.data();
  double* gw = grad->weight.data();
  for (int co = 0; co < conv.out_channels; ++co) {
    const double* dop = d_output.channel(co);
    double bsum = 0.0;
    for (std::size_t i = 0; i < d_output.plane(); ++i) bsum += dop[i];
    grad->bias[co] += bsum;
    for (int ci = 0; ci < conv.in_channels; ++ci) {
      const double* ip = input.channel(ci);
      double* dip = d_input.channel(ci);
      for (int ky = 0; ky < k; ++ky) {
        const int dy = ky - pad;
        const int y0 = std::max(0, -dy);
        const int y1 = std::min(h, h - dy);
        for (int kx = 0; kx < k; ++kx, ++wt, ++gw) {
          const double wv = *wt;
          const int dx = kx - pad;
          const int x0 = std::max(0, -dx);
          const int x1 = std::min(w, w - dx);
          double acc = 0.0;
          for (int y = y0; y < y1; ++y) {
            const double* drow = dop + static_cast<std::size_t>(y) * w;
            const std::size_t off = static_cast<std::size_t>(y + dy) * w + dx;
            const double* irow = ip + off;
            double* dirow = dip + off;
            for (int x = x0; x < x1; ++x) {
              acc += drow[x] * irow[x];
              dirow[x] += wv * drow[x];
            }
          }
          *gw += acc;
        }
      }
    }
  }
  return d_input;
}

Tensor ReluForward(const Tensor& input) {
  Tensor out = input;
  for (double& v : out.data) v = v > 0.0 ? v : 0.0;
  return out;
}

Tensor ReluBackward(const Tensor& output, const Tensor& d_output) {
  Tensor d = d_output;
  for (std::size_t i = 0; i < d.data.size(); ++i) {
    if (!(output.data[i] > 0.0)) d.data[i] = 0.0;
  }
  return d;
}

Tensor MaxPoolForward(const Tensor& input, std::vector<std::size_t>* argmax) {
  if (input.height % 2 != 0 || input.width % 2 != 0) {
    throw Error(ErrorCode::kShapeError,
                "max pooling needs even spatial size, got " +
                    std::to_string(input.height) + "x" +
                    std::to_string(input.width));
  }
  const int oh = input.height / 2;
  const int ow = input.width / 2;
  Tensor out(input.channels, oh, ow);
  argmax->assign(out.data.size(), 0);
  std::size_t o = 0;
  for (int c = 0; c < input.channels; ++c) {
    const std::size_t base = c * input.plane();
    for (int y = 0; y < oh; ++y) {
      for (int x = 0; x < ow; ++x, ++o) {
        std::size_t best = base + static_cast<std::size_t>(2 * y) * input.width +
                           2 * x;
        const std::size_t cand[3] = {best + 1, best + input.width,
                                     best + input.width + 1};
        for (std::size_t idx : cand) {
          if (input.data[idx] > input.data[best]) best = idx;
        }
        out.data[o] = input.data[best];
        (*argmax)[o] = best;
      }
    }
  }
  return out;
}

Tensor MaxPoolBackward(const Tensor& d_output,
                       const std::vector<std::size_t>& argmax, int in_height,
                       int in_width) {
  if (argmax.size() != d_output.data.size() ||
      in_height != 2 * d_output.height || in_width != 2 * d_output.width) {
    throw Error(ErrorCode::kStaleCache, "max pool backward shape mismatch");
  }
  Tensor d_input(d_output.channels, in_height, in_width);
  for (std::size_t o = 0; o < argmax.size(); ++o) {
    d_input.data[argmax[o]] += d_output.data[o];
  }
  return d_input;
}

Tensor UpsampleBilinearForward(const Tensor& input, int factor) {
  if (factor < 1) {
    throw Error(ErrorCode::kShapeError, "upsample factor must be >= 1");
  }
  const AxisWeights ay = BilinearAxis(input.height, factor);
  const AxisWeights ax = BilinearAxis(input.width, factor);
  Tensor out(input.channels, input.height * factor, input.width * factor);
  for (int c = 0; c < input.channels; ++c) {
    const double* ip = input.channel(c);
    double* op = out.channel(c);
    for (int y = 0; y < out.height; ++y) {
      const double* r0 = ip + static_cast<std::size_t>(ay.lo[y]) * input.width;
      const double* r1 = ip + static_cast<std::size_t>(ay.hi[y]) * input.width;
      const double wy0 = ay.w_lo[y];
      const double wy1 = ay.w_hi[y];
      double* orow = op + static_cast<std::size_t>(y) * out.width;
      for (int x = 0; x < out.width; ++x) {
        const int x0 = ax.lo[x];
        const int x1 = ax.hi[x];
        orow[x] = wy0 * (ax.w_lo[x] * r0[x0] + ax.w_hi[x] * r0[x1]) +
                  wy1 * (ax.w_lo[x] * r1[x0] + ax.w_hi[x] * r1[x1]);
      }
    }
  }
  return out;
}

Tensor UpsampleBilinearBackward(const Tensor& d_output, int factor,
                                int in_height, int in_width) {
  if (d_output.height != in_height * factor ||
      d_output.width != in_width * factor) {
    throw Error(ErrorCode::kStaleCache, "upsample backward shape mismatch");
  }
  const AxisWeights ay = BilinearAxis(in_height, factor);
  const AxisWeights ax = BilinearAxis(in_width, factor);
  Tensor d_input(d_output.channels, in_height, in_width);
  for (int c = 0; c < d_output.channels; ++c) {
    const double* dp = d_output.channel(c);
    double* ip = d_input.channel(c);
    for (int y = 0; y < d_output.height; ++y) {
      double* r0 = ip + static_cast<std::size_t>(ay.lo[y]) * in_width;
      double* r1 = ip + static_cast<std::size_t>(ay.hi[y]) * in_width;
      const double wy0 = ay.w_lo[y];
      const double wy1 = ay.w_hi[y];
      const double* drow = dp + static_cast<std::size_t>(y) * d_output.width;
      for (int x = 0; x < d_output.width; ++x) {
        const double g = drow[x];
        r0[ax.lo[x]] += wy0 * ax.w_lo[x] * g;
        r0[ax.hi[x]] += wy0 * ax.w_hi[x] * g;
        r1[ax.lo[x]] += wy1 * ax.w_lo[x] * g;
        r1[ax.hi[x]] += wy1 * ax.w_hi[x] * g;
      }
    }
  }
  return d_input;
}

Tensor SigmoidForward(const Tensor& input) {
  Tensor out = input;
  for (double& v : out.data) v = 1.0 / (1.0 + std::exp(-v));
  return out;
}

Tensor SigmoidBackward(const Tensor& output, const Tensor& d_output) {
  Tensor d = d_output;
  for (std::size_t i = 0; i < d.data.size(); ++i) {
    const double s = output.data[i];
    d.data[i] *= s * (1.0 - s);
  }
  return d;
}

}  // namespace camforge::orand
