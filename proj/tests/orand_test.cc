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
#include <cmath>
#include <random>

#include "camforge/error.h"
#include "camforge/orand/layers.h"
#include "camforge/orand/network.h"
#include "camforge/orand/train.h"
#include "doctest.h"
#include "oracles.h"

namespace camforge::orand {
namespace {

constexpr double kStep = 1e-6;
constexpr double kTolerance = 1e-4;

Tensor RandomTensor(std::mt19937_64& gen, int c, int h, int w,
                    double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Tensor t(c, h, w);
  for (double& v : t.data) v = u(gen);
  return t;
}

// Values bounded away from zero, so a ReLU never sits on its kink.
Tensor AwayFromZero(std::mt19937_64& gen, int c, int h, int w) {
  Tensor t = RandomTensor(gen, c, h, w, 0.05, 1.0);
  std::bernoulli_distribution sign(0.5);
  for (double& v : t.data) v = sign(gen) ? v : -v;
  return t;
}

double Dot(const Tensor& a, const Tensor& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

// Checks d<f(x), r>/dx against central differences on every element of x.
void CheckInputGradient(Tensor* x, const Tensor& analytic,
                        const std::function<double()>& f) {
  REQUIRE(analytic.data.size() == x->data.size());
  for (std::size_t i = 0; i < x->data.size(); ++i) {
    const double numeric = oracle::CentralDifference(&x->data[i], kStep, f);
    INFO("coordinate " << i);
    REQUIRE(oracle::RelativeError(analytic.data[i], numeric) < kTolerance);
  }
}

TEST_CASE("conv2d gradients") {
  std::mt19937_64 gen(1);
  for (int k : {1, 3}) {
    ConvTensors conv(2, 3, k);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (double& v : conv.weight) v = u(gen);
    for (double& v : conv.bias) v = u(gen);
    Tensor x = RandomTensor(gen, 2, 5, 4);
    const Tensor r = RandomTensor(gen, 3, 5, 4);
    auto loss = [&] { return Dot(Conv2dForward(x, conv), r); };
    ConvTensors grad(2, 3, k);
    const Tensor dx = Conv2dBackward(x, conv, r, &grad);
    CheckInputGradient(&x, dx, loss);
    for (std::size_t i = 0; i < conv.weight.size(); ++i) {
      const double n = oracle::CentralDifference(&conv.weight[i], kStep, loss);
      REQUIRE(oracle::RelativeError(grad.weight[i], n) < kTolerance);
    }
    for (std::size_t i = 0; i < conv.bias.size(); ++i) {
      const double n = oracle::CentralDifference(&conv.bias[i], kStep, loss);
      REQUIRE(oracle::RelativeError(grad.bias[i], n) < kTolerance);
    }
  }
}

TEST_CASE("conv2d same padding keeps the size") {
  ConvTensors conv(1, 1, 3);
  conv.w(0, 0, 1, 1) = 1.0;
  Tensor x(1, 3, 3);
  for (std::size_t i = 0; i < 9; ++i) x.data[i] = static_cast<double>(i);
  const Tensor y = Conv2dForward(x, conv);
  CHECK(y.same_shape(x));
  CHECK(y.data == x.data);
}

TEST_CASE("relu, sigmoid, pool and upsample gradients") {
  std::mt19937_64 gen(2);
  {
    Tensor x = AwayFromZero(gen, 2, 4, 4);
    const Tensor r = RandomTensor(gen, 2, 4, 4);
    const Tensor dx = ReluBackward(ReluForward(x), r);
    CheckInputGradient(&x, dx, [&] { return Dot(ReluForward(x), r); });
  }
  {
    Tensor x = RandomTensor(gen, 2, 4, 4, -3, 3);
    const Tensor r = RandomTensor(gen, 2, 4, 4);
    const Tensor dx = SigmoidBackward(SigmoidForward(x), r);
    CheckInputGradient(&x, dx, [&] { return Dot(SigmoidForward(x), r); });
  }
  {
    Tensor x = RandomTensor(gen, 2, 6, 4);
    const Tensor r = RandomTensor(gen, 2, 3, 2);
    std::vector<std::size_t> argmax;
    MaxPoolForward(x, &argmax);
    const Tensor dx = MaxPoolBackward(r, argmax, 6, 4);
    CheckInputGradient(&x, dx, [&] {
      std::vector<std::size_t> unused;
      return Dot(MaxPoolForward(x, &unused), r);
    });
  }
  for (int factor : {2, 4}) {
    Tensor x = RandomTensor(gen, 2, 3, 5);
    const Tensor r = RandomTensor(gen, 2, 3 * factor, 5 * factor);
    const Tensor dx = UpsampleBilinearBackward(r, factor, 3, 5);
    CheckInputGradient(&x, dx, [&] {
      return Dot(UpsampleBilinearForward(x, factor), r);
    });
  }
}

TEST_CASE("max pool rejects odd sizes") {
  std::vector<std::size_t> argmax;
  CHECK_THROWS_AS(MaxPoolForward(Tensor(1, 3, 4), &argmax), Error);
}

TEST_CASE("bilinear upsample interpolates between centers") {
  Tensor x(1, 1, 2);
  x.data = {0.0, 1.0};
  const Tensor y = UpsampleBilinearForward(x, 2);
  // Output centers at 0.25 / 0.75 / 1.25 / 1.75 of the input width map to
  // source coordinates -0.25, 0.25, 0.75, 1.25, clamped at the edges.
  REQUIRE(y.width == 4);
  CHECK(y.data[0] == doctest::Approx(0.0));
  CHECK(y.data[1] == doctest::Approx(0.25));
  CHECK(y.data[2] == doctest::Approx(0.75));
  CHECK(y.data[3] == doctest::Approx(1.0));
}

TEST_CASE("composed default network gradients on parameters") {
  std::mt19937_64 gen(3);
  FcnParams params = InitParams(DefaultArchitecture(), 17);
  std::uniform_real_distribution<double> u(-0.05, 0.05);
  for (auto& c : params.convs) {
    for (double& b : c.bias) b = u(gen);
  }
  const Cam input(8, 8, oracle::UnitValues(gen, 64));
  const Cam target(8, 8, oracle::UnitValues(gen, 64));
  auto loss = [&] {
    return LossLsBce(Forward(params, input).prediction, target, 0.1).loss;
  };
  const ForwardResult fr = Forward(params, input);
  const LossResult lr = LossLsBce(fr.prediction, target, 0.1);
  const ParamGrads grads = Backward(params, fr.cache, lr.d_prediction);

  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    std::uniform_int_distribution<std::size_t> pick_conv(
        0, params.convs.size() - 1);
    const std::size_t ci = pick_conv(gen);
    auto& conv = params.convs[ci];
    std::bernoulli_distribution use_bias(0.2);
    const bool bias = use_bias(gen);
    std::vector<double>& values = bias ? conv.bias : conv.weight;
    const std::vector<double>& g =
        bias ? grads.convs[ci].bias : grads.convs[ci].weight;
    std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
    const std::size_t i = pick(gen);
    const double numeric = oracle::CentralDifference(&values[i], kStep, loss);
    INFO("conv " << ci << std::string(bias ? " bias " : " weight ") << i
                  << " analytic " << g[i] << " numeric " << numeric);
    // Floor: with a loss near 1 and this step, the difference quotient
    // carries about 1e-10 of rounding, which dominates tiny gradients.
    CHECK(oracle::RelativeError(g[i], numeric, 1e-5) < kTolerance);
    ++checked;
  }
  CHECK(checked >= 100);
}

TEST_CASE("loss gradient matches finite differences") {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> p(36), t(36);
  for (double& v : p) v = u(gen);
  for (double& v : t) v = u(gen) > 0.6 ? 1.0 : 0.0;
  const Cam target(6, 6, t);
  const LossResult lr = LossLsBce(Cam(6, 6, p), target, 0.1);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double numeric = oracle::CentralDifference(
        &p[i], 1e-6, [&] { return LossLsBce(Cam(6, 6, p), target, 0.1).loss; });
    REQUIRE(std::abs(lr.d_prediction[i] - numeric) < 1e-6);
  }
}

TEST_CASE("loss closed forms and domain") {
  const LossResult one = LossLsBce(Cam(1, 1, {0.5}), Cam(1, 1, {1.0}), 0.1);
  CHECK(one.loss == doctest::Approx(std::log(2.0)).epsilon(1e-12));

  // The minimum over pred sits at the smoothed target.
  const double tprime = 0.95;
  const double floor =
      LossLsBce(Cam(1, 1, {tprime}), Cam(1, 1, {1.0}), 0.1).loss;
  for (double p = 0.05; p < 1.0; p += 0.05) {
    CHECK(LossLsBce(Cam(1, 1, {p}), Cam(1, 1, {1.0}), 0.1).loss >=
          floor - 1e-15);
  }
  CHECK_THROWS_AS(LossLsBce(Cam(1, 1, {1.0}), Cam(1, 1, {1.0}), 0.1), Error);
  CHECK_THROWS_AS(LossLsBce(Cam(1, 1, {0.0}), Cam(1, 1, {1.0}), 0.1), Error);
  CHECK_THROWS_AS(LossLsBce(Cam(1, 2, {0.5, 0.5}), Cam(1, 1, {1.0}), 0.1),
                  Error);
  CHECK_THROWS_AS(LossLsBce(Cam(1, 1, {0.5}), Cam(1, 1, {1.0}), 0.5), Error);
}

TEST_CASE("loss is invariant to a joint pixel permutation") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> u(0.05, 0.95);
  std::vector<double> p(16), t(16);
  for (double& v : p) v = u(gen);
  for (double& v : t) v = u(gen) > 0.5 ? 1.0 : 0.0;
  const double base = LossLsBce(Cam(4, 4, p), Cam(4, 4, t), 0.1).loss;
  std::vector<double> p2(p.rbegin(), p.rend()), t2(t.rbegin(), t.rend());
  CHECK(LossLsBce(Cam(4, 4, p2), Cam(4, 4, t2), 0.1).loss ==
        doctest::Approx(base).epsilon(1e-14));
  CHECK(base >= 0.0);
}

TEST_CASE("init scheme") {
  const FcnParams a = InitParams(DefaultArchitecture(), 5);
  const FcnParams b = InitParams(DefaultArchitecture(), 5);
  CHECK(a.convs == b.convs);
  CHECK(InitParams(DefaultArchitecture(), 6).convs != a.convs);
  for (const auto& c : a.convs) {
    for (double v : c.bias) REQUIRE(v == 0.0);
  }
  // Largest layer: 32 -> 32, 3x3, fan_in 288, variance 1 / (3 * 288).
  const auto& big = a.convs[3];
  REQUIRE(big.weight.size() == 32u * 32 * 9);
  double mean = 0.0;
  for (double v : big.weight) mean += v;
  mean /= static_cast<double>(big.weight.size());
  double var = 0.0;
  for (double v : big.weight) var += (v - mean) * (v - mean);
  var /= static_cast<double>(big.weight.size() - 1);
  const double want = 1.0 / (3.0 * 288.0);
  CHECK(std::abs(var - want) / want < 0.2);
}

TEST_CASE("forward contracts") {
  FcnParams zero = InitParams(DefaultArchitecture(), 0);
  for (auto& c : zero.convs) std::fill(c.weight.begin(), c.weight.end(), 0.0);
  std::mt19937_64 gen(9);
  const Cam input(32, 32, oracle::UnitValues(gen, 1024));
  const ForwardResult fr = Forward(zero, input);
  CHECK(fr.prediction.height() == 32);
  CHECK(fr.prediction.width() == 32);
  for (double v : fr.prediction.grid().values()) REQUIRE(v == 0.5);

  const FcnParams p = InitParams(DefaultArchitecture(), 1);
  CHECK(Forward(p, input).prediction == Forward(p, input).prediction);
  const Cam out = Infer(p, input);
  CHECK(out.max() == doctest::Approx(1.0));
  CHECK_THROWS_AS(Forward(p, Cam::Zeros(30, 32)), Error);
}

TEST_CASE("backward contracts") {
  const FcnParams p = InitParams(DefaultArchitecture(), 2);
  std::mt19937_64 gen(10);
  const Cam input(8, 8, oracle::UnitValues(gen, 64));
  const ForwardResult fr = Forward(p, input);
  const ParamGrads zero = Backward(p, fr.cache, Grid<double>(8, 8, 0.0));
  for (const auto& c : zero.convs) {
    for (double v : c.weight) REQUIRE(v == 0.0);
    for (double v : c.bias) REQUIRE(v == 0.0);
  }
  Grid<double> d(8, 8, 0.0);
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = 0.01 * (i % 7);
  const ParamGrads once = Backward(p, fr.cache, d);
  ParamGrads twice = ZeroGrads(p);
  BackwardInto(p, fr.cache, d, &twice);
  BackwardInto(p, fr.cache, d, &twice);
  for (std::size_t c = 0; c < once.convs.size(); ++c) {
    for (std::size_t i = 0; i < once.convs[c].weight.size(); ++i) {
      REQUIRE(twice.convs[c].weight[i] ==
              doctest::Approx(2.0 * once.convs[c].weight[i]));
    }
  }
  CHECK_THROWS_AS(Backward(p, fr.cache, Grid<double>(4, 4, 0.0)), Error);
  const FcnParams other = InitParams(Vgg16Architecture(), 0);
  CHECK_THROWS_AS(Backward(other, fr.cache, d), Error);
}

TEST_CASE("architecture validation") {
  CHECK_NOTHROW(DefaultArchitecture().Validate());
  CHECK_NOTHROW(Vgg16Architecture().Validate());
  CHECK(Vgg16Architecture().RequiredDivisor() == 16);
  CHECK(DefaultArchitecture().RequiredDivisor() == 4);
  FcnArchitecture bad = DefaultArchitecture();
  bad.layers[2].in_channels = 8;
  CHECK_THROWS_AS(bad.Validate(), Error);
  FcnArchitecture no_up = DefaultArchitecture();
  for (auto& l : no_up.layers) {
    if (l.kind == LayerKind::kUpsample) l.factor = 2;
  }
  CHECK_THROWS_AS(no_up.Validate(), Error);
}

TEST_CASE("poly learning rate") {
  CHECK(PolyLr(0.001, 0, 100, 0.9) == 0.001);
  CHECK(PolyLr(0.001, 100, 100, 0.9) == 0.0);
  CHECK(PolyLr(0.001, 50, 100, 1.0) == doctest::Approx(0.0005));
}

ConvTensors Filled(double v) {
  ConvTensors c(1, 1, 1);
  c.weight[0] = v;
  c.bias[0] = v;
  return c;
}

FcnParams OneConv(double w) {
  FcnParams p;
  p.architecture.layers = {LayerSpec::Conv(1, 1, 1), LayerSpec::Sigmoid()};
  p.convs = {Filled(w)};
  return p;
}

TEST_CASE("sgd momentum recurrence") {
  ParamGrads g;
  g.convs = {Filled(1.0)};
  {
    FcnParams p = OneConv(0.0);
    SgdState s;
    SgdStep(&p, g, 0.1, 0.0, 0.0, &s);
    CHECK(p.convs[0].weight[0] == doctest::Approx(-0.1));
  }
  {
    FcnParams p = OneConv(0.3);
    SgdState s;
    SgdStep(&p, g, 0.0, 0.9, 0.0, &s);
    CHECK(p.convs[0].weight[0] == 0.3);
  }
  {
    FcnParams p = OneConv(0.0);
    SgdState s;
    SgdStep(&p, g, 0.1, 0.9, 0.0, &s);
    SgdStep(&p, g, 0.1, 0.9, 0.0, &s);
    CHECK(-p.convs[0].weight[0] == doctest::Approx(0.1 * 1.0 * (2 + 0.9)));
  }
  FcnParams p = OneConv(0.0);
  SgdState s;
  ParamGrads wrong;
  wrong.convs = {ConvTensors(1, 2, 1)};
  CHECK_THROWS_AS(SgdStep(&p, wrong, 0.1, 0.9, 0.0, &s), Error);
}

std::vector<TrainSample> TinyDataset() {
  std::mt19937_64 gen(12);
  std::vector<TrainSample> ds;
  for (int i = 0; i < 4; ++i) {
    auto in = oracle::UnitValues(gen, 64);
    std::vector<double> tgt(64);
    for (std::size_t k = 0; k < 64; ++k) tgt[k] = in[k] > 0.7 ? in[k] : 0.0;
    ds.push_back({Cam(8, 8, in), Cam(8, 8, tgt), 1, "t"});
  }
  return ds;
}

TEST_CASE("training is deterministic and lr0 = 0 freezes the loss") {
  TrainConfig cfg;
  cfg.epochs = 3;
  cfg.seed = 4;
  const auto ds = TinyDataset();
  const TrainResult a = Train(ds, cfg);
  const TrainResult b = Train(ds, cfg);
  CHECK(a.params.convs == b.params.convs);
  REQUIRE(a.history.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.history[i].mean_loss == b.history[i].mean_loss);
  }
  cfg.lr0 = 0.0;
  const TrainResult frozen = Train(ds, cfg);
  for (const auto& e : frozen.history) {
    CHECK(e.mean_loss == frozen.history.front().mean_loss);
  }
  CHECK_THROWS_AS(Train({}, cfg), Error);
  cfg.batch_size = 0;
  CHECK_THROWS_AS(Train(ds, cfg), Error);
}

}  // namespace
}  // namespace camforge::orand
