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
// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "camforge/cam.h"
#include "camforge/curriculum.h"
#include "camforge/error.h"
#include "camforge/io/npy.h"
#include "camforge/io/png.h"
#include "camforge/metrics.h"
#include "camforge/orand/layers.h"
#include "camforge/orand/network.h"
#include "camforge/orand/train.h"
#include "camforge/pipeline/commands.h"
#include "camforge/pipeline/config.h"
#include "camforge/pipeline/report.h"
#include "camforge/synthgen.h"
#include "oracles.h"

namespace camforge {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

// Collects failed checks for one criterion.
class Verdict {
 public:
  void Expect(bool ok, const std::string& what) {
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    all_ok_ = all_ok_ && ok;
  }
  bool ok() const { return all_ok_; }
  std::string Detail() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }

 private:
  bool all_ok_ = true;
  std::vector<std::string> failures_;
};

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

fs::path WorkDir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "camforge_acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Cam RandomCam(std::mt19937_64& gen, int h, int w) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(static_cast<std::size_t>(h) * w);
  for (double& x : v) x = u(gen);
  return Cam(h, w, std::move(v));
}

// ---- 1, 2: fusion -------------------------------------------------------

std::vector<double> Values(const Cam& c) {
  const auto v = c.grid().values();
  return {v.begin(), v.end()};
}

struct CamPair {
  Cam a, b;
};

std::vector<CamPair> FusionCorpus() {
  std::mt19937_64 gen(101);
  std::uniform_int_distribution<int> side(1, 16);
  std::vector<CamPair> pairs;
  for (int i = 0; i < 1000; ++i) {
    const int h = side(gen), w = side(gen);
    Cam a = RandomCam(gen, h, w);
    Cam b = RandomCam(gen, h, w);
    if (i % 10 == 0) b = Cam::Zeros(h, w);  // exercises the all-zero branch
    pairs.push_back({std::move(a), std::move(b)});
  }
  return pairs;
}

std::string Criterion1(const std::vector<CamPair>& pairs) {
  const auto start = Clock::now();
  Verdict v;
  const std::pair<FusionMode, oracle::Op> modes[] = {
      {FusionMode::kOr, oracle::Op::kOr},
      {FusionMode::kAnd, oracle::Op::kAnd},
      {FusionMode::kAverage, oracle::Op::kAvg}};
  double worst = 0.0;
  for (const auto& p : pairs) {
    for (const auto& [mode, op] : modes) {
      const Cam fused = Fuse(p.a, p.b, mode);
      const auto expect = oracle::Fuse(Values(p.a), Values(p.b), op);
      const std::vector<double> got = Values(fused);
      for (std::size_t i = 0; i < expect.size(); ++i) {
        worst = std::max(worst, std::abs(got[i] - expect[i]));
      }
      v.Expect(fused == Fuse(p.b, p.a, mode), "commutativity");
      v.Expect(FuseRaw(p.a, p.b, mode) == FuseRaw(p.b, p.a, mode),
               "raw commutativity");
    }
  }
  const double secs = Seconds(start);
  v.Expect(worst <= 1e-6, "max deviation " + std::to_string(worst));
  v.Expect(secs < 10.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "fusion oracle on " << pairs.size() << " pairs, max deviation "
     << worst << ", " << secs << " s";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

std::string Criterion2(const std::vector<CamPair>& pairs) {
  Verdict v;
  std::size_t pixels = 0;
  for (const auto& p : pairs) {
    const RawMap prod = ProbabilisticAndRaw(p.a, p.b);
    const RawMap sum = ProbabilisticOrRaw(p.a, p.b);
    for (int y = 0; y < p.a.height(); ++y) {
      for (int x = 0; x < p.a.width(); ++x) {
        const double lo = std::min(p.a.at(y, x), p.b.at(y, x));
        const double hi = std::max(p.a.at(y, x), p.b.at(y, x));
        v.Expect(prod.at(y, x) <= lo && lo <= hi && hi <= sum.at(y, x),
                 "ordering broken");
        ++pixels;
      }
    }
  }
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") +
         "product <= min <= max <= probabilistic sum on " +
         std::to_string(pixels) + " pixels";
}

// ---- 3: precision direction ---------------------------------------------

struct Variants {
  std::map<std::string, ConfusionMatrix> cms;
};

Variants PseudoMaskMetrics(const synth::CorpusSpec& spec) {
  Variants out;
  const int n = spec.num_classes + 1;
  for (const char* name : {"peaky", "dense", "or", "and", "avg"}) {
    out.cms.emplace(name, ConfusionMatrix(n));
  }
  for (const auto& s : synth::GenCorpus(spec)) {
    auto add = [&](const char* name, const CamStack& stack) {
      out.cms.at(name).Accumulate(ToPseudoMask(stack), s.gt);
    };
    add("peaky", s.cams_a);
    add("dense", s.cams_b);
    add("or", StackFuse(s.cams_a, s.cams_b, FusionMode::kOr));
    add("and", StackFuse(s.cams_a, s.cams_b, FusionMode::kAnd));
    add("avg", StackFuse(s.cams_a, s.cams_b, FusionMode::kAverage));
  }
  return out;
}

std::string Criterion3() {
  const auto start = Clock::now();
  synth::CorpusSpec spec;
  spec.num_images = 100;
  spec.false_overlap = synth::FalseOverlap::kDisjoint;
  spec.seed = 0;
  const Variants first = PseudoMaskMetrics(spec);
  const Variants second = PseudoMaskMetrics(spec);
  Verdict v;
  std::map<std::string, MetricReport> r;
  for (const auto& [name, cm] : first.cms) {
    r[name] = Summarize(cm);
    v.Expect(cm == second.cms.at(name), name + " not deterministic");
  }
  const double p_and = r["and"].mean_precision;
  v.Expect(p_and > std::max(r["peaky"].mean_precision,
                            r["dense"].mean_precision),
           "AND precision not above both inputs");
  v.Expect(p_and > r["avg"].mean_precision, "AND precision not above AVG");
  v.Expect(r["and"].mean_recall <= r["or"].mean_recall,
           "AND recall above OR recall");
  const double secs = Seconds(start);
  v.Expect(secs < 60.0, "runtime");
  std::ostringstream os;
  os.precision(4);
  os << "precision and " << p_and << ", peaky " << r["peaky"].mean_precision
     << ", dense " << r["dense"].mean_precision << ", avg "
     << r["avg"].mean_precision << "; recall and " << r["and"].mean_recall
     << " <= or " << r["or"].mean_recall << "; " << secs << " s";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

// ---- 4, 5: refiner ------------------------------------------------------

struct RefinerRun {
  pipeline::Json report;
  std::vector<orand::EpochRecord> history;
  double seconds = 0.0;
  std::string error;
};

RefinerRun RunRefiner() {
  RefinerRun run;
  const auto start = Clock::now();
  try {
    pipeline::RunConfig c;
    c.out = WorkDir("refiner");
    c.seed = 0;
    c.synth.num_images = 120;
    c.synth.height = 32;
    c.synth.width = 32;
    c.train_images = 100;
    c.max_pairs = 64;
    std::ostringstream log;
    pipeline::CmdSynth(c, log);
    pipeline::CmdFuse(c, log);
    run.history = pipeline::CmdTrain(c, log).history;
    pipeline::CmdInfer(c, log);
    pipeline::EvalOptions opts;
    opts.write_masks = false;
    run.report = pipeline::CmdEval(c, opts, log);
  } catch (const Error& e) {
    run.error = e.what();
  }
  run.seconds = Seconds(start);
  return run;
}

std::string Criterion4(const RefinerRun& run) {
  if (!run.error.empty()) return "FAIL|pipeline error: " + run.error;
  Verdict v;
  const auto& ref = run.report["variants"]["orandnet"];
  const auto& avg = run.report["variants"]["avg"];
  const int images = run.report["evaluation"]["images"].get<int>();
  v.Expect(images == 20, "held-out count " + std::to_string(images));
  const double rp = ref["mean_precision"].get<double>();
  const double ap = avg["mean_precision"].get<double>();
  const double rm = ref["miou"].get<double>();
  const double am = avg["miou"].get<double>();
  v.Expect(rp > ap, "precision not above avg");
  v.Expect(rm > am, "mIoU not above avg");
  v.Expect(run.seconds < 600.0, "runtime");
  std::ostringstream os;
  os.precision(4);
  os << "held-out " << images << " images: refiner precision " << rp
     << " vs avg " << ap << ", mIoU " << rm << " vs " << am << "; "
     << run.seconds << " s";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

std::string Criterion5(const RefinerRun& run) {
  if (!run.error.empty()) return "FAIL|pipeline error: " + run.error;
  const auto& h = run.history;
  if (h.size() < 20) return "FAIL|history too short";
  Verdict v;
  const double first = h.front().mean_loss;
  const double last = h.back().mean_loss;
  v.Expect(last < 0.5 * first, "final loss not below half of epoch 1");
  // Means over consecutive, non-overlapping 10-epoch windows.
  std::vector<double> blocks;
  for (std::size_t b = 0; b + 10 <= h.size(); b += 10) {
    double s = 0.0;
    for (std::size_t i = b; i < b + 10; ++i) s += h[i].mean_loss;
    blocks.push_back(s / 10.0);
  }
  for (std::size_t i = 1; i < blocks.size(); ++i) {
    v.Expect(blocks[i] <= blocks[i - 1],
             "window " + std::to_string(i) + " rose");
  }
  std::ostringstream os;
  os.precision(4);
  os << "loss epoch 1 " << first << " -> epoch " << h.size() << " " << last
     << " (" << 100.0 * last / first << "%), " << blocks.size()
     << " window means non-increasing";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

// ---- 6: gradients -------------------------------------------------------

constexpr double kStep = 1e-6;

orand::Tensor RandomTensor(std::mt19937_64& gen, int c, int h, int w,
                           double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  orand::Tensor t(c, h, w);
  for (double& x : t.data) x = u(gen);
  return t;
}

double Dot(const orand::Tensor& a, const orand::Tensor& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) s += a.data[i] * b.data[i];
  return s;
}

// Worst relative error of analytic against central differences over every
// coordinate of `values`.
double WorstError(std::vector<double>* values,
                  const std::vector<double>& analytic,
                  const std::function<double()>& f, double floor = 1e-8) {
  double worst = 0.0;
  for (std::size_t i = 0; i < values->size(); ++i) {
    const double n = oracle::CentralDifference(&(*values)[i], kStep, f);
    worst = std::max(worst, oracle::RelativeError(analytic[i], n, floor));
  }
  return worst;
}

std::string Criterion6() {
  using namespace orand;
  const auto start = Clock::now();
  std::mt19937_64 gen(606);
  std::map<std::string, double> worst;

  {
    ConvTensors conv(2, 3, 3);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    for (double& x : conv.weight) x = u(gen);
    for (double& x : conv.bias) x = u(gen);
    Tensor x = RandomTensor(gen, 2, 5, 4);
    const Tensor r = RandomTensor(gen, 3, 5, 4);
    auto f = [&] { return Dot(Conv2dForward(x, conv), r); };
    ConvTensors g(2, 3, 3);
    const Tensor dx = Conv2dBackward(x, conv, r, &g);
    worst["conv"] = std::max({WorstError(&x.data, dx.data, f),
                              WorstError(&conv.weight, g.weight, f),
                              WorstError(&conv.bias, g.bias, f)});
  }
  {
    Tensor x = RandomTensor(gen, 2, 4, 4, 0.05, 1.0);
    std::bernoulli_distribution sign(0.5);
    for (double& e : x.data) e = sign(gen) ? e : -e;
    const Tensor r = RandomTensor(gen, 2, 4, 4);
    const Tensor dx = ReluBackward(ReluForward(x), r);
    worst["relu"] =
        WorstError(&x.data, dx.data, [&] { return Dot(ReluForward(x), r); });
  }
  {
    Tensor x = RandomTensor(gen, 2, 6, 4);
    const Tensor r = RandomTensor(gen, 2, 3, 2);
    std::vector<std::size_t> argmax;
    MaxPoolForward(x, &argmax);
    const Tensor dx = MaxPoolBackward(r, argmax, 6, 4);
    worst["maxpool"] = WorstError(&x.data, dx.data, [&] {
      std::vector<std::size_t> unused;
      return Dot(MaxPoolForward(x, &unused), r);
    });
  }
  {
    Tensor x = RandomTensor(gen, 2, 3, 5);
    const Tensor r = RandomTensor(gen, 2, 6, 10);
    const Tensor dx = UpsampleBilinearBackward(r, 2, 3, 5);
    worst["upsample"] = WorstError(&x.data, dx.data, [&] {
      return Dot(UpsampleBilinearForward(x, 2), r);
    });
  }
  {
    Tensor x = RandomTensor(gen, 2, 4, 4, -3.0, 3.0);
    const Tensor r = RandomTensor(gen, 2, 4, 4);
    const Tensor dx = SigmoidBackward(SigmoidForward(x), r);
    worst["sigmoid"] = WorstError(&x.data, dx.data,
                                  [&] { return Dot(SigmoidForward(x), r); });
  }

  // Composed default network, random parameter coordinates.
  int coordinates = 0;
  {
    FcnParams params = InitParams(DefaultArchitecture(), 6);
    std::uniform_real_distribution<double> u(-0.05, 0.05);
    for (auto& c : params.convs) {
      for (double& b : c.bias) b = u(gen);
    }
    const Cam input = RandomCam(gen, 8, 8);
    const Cam target = RandomCam(gen, 8, 8);
    auto loss = [&] {
      return LossLsBce(Forward(params, input).prediction, target, 0.1).loss;
    };
    const ForwardResult fr = Forward(params, input);
    const ParamGrads g =
        Backward(params, fr.cache, LossLsBce(fr.prediction, target, 0.1)
                                       .d_prediction);
    double w = 0.0;
    std::uniform_int_distribution<std::size_t> pick_conv(
        0, params.convs.size() - 1);
    for (; coordinates < 120; ++coordinates) {
      const std::size_t ci = pick_conv(gen);
      const bool bias = coordinates % 5 == 0;
      auto& values = bias ? params.convs[ci].bias : params.convs[ci].weight;
      const auto& grad = bias ? g.convs[ci].bias : g.convs[ci].weight;
      std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
      const std::size_t i = pick(gen);
      const double n = oracle::CentralDifference(&values[i], kStep, loss);
      w = std::max(w, oracle::RelativeError(grad[i], n, 1e-5));
    }
    worst["network"] = w;
  }

  // Loss gradient with respect to the predictions.
  {
    std::uniform_real_distribution<double> u(0.05, 0.95);
    std::vector<double> p(64), t(64);
    for (double& x : p) x = u(gen);
    for (double& x : t) x = u(gen) < 0.5 ? 0.0 : 1.0;
    const Cam target(8, 8, t);
    const LossResult lr = LossLsBce(Cam(8, 8, p), target, 0.1);
    double w = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double n = oracle::CentralDifference(&p[i], kStep, [&] {
        return LossLsBce(Cam(8, 8, p), target, 0.1).loss;
      });
      w = std::max(w, std::abs(lr.d_prediction.values()[i] - n));
    }
    worst["loss"] = w;
  }

  const double secs = Seconds(start);
  Verdict v;
  std::ostringstream os;
  os.precision(3);
  for (const auto& [name, err] : worst) {
    const double bound = name == "loss" ? 1e-6 : 1e-4;
    v.Expect(err < bound, name);
    os << name << " " << err << ", ";
  }
  v.Expect(coordinates >= 100, "too few coordinates");
  v.Expect(secs < 60.0, "runtime");
  os << coordinates << " network coordinates, " << secs << " s";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (failed: " + v.Detail() + ")");
}

// ---- 7: metrics ---------------------------------------------------------

std::string Criterion7() {
  Verdict v;
  std::mt19937_64 gen(707);
  std::uniform_int_distribution<int> side(1, 8), classes(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    const int h = side(gen), w = side(gen), c = classes(gen);
    std::uniform_int_distribution<int> label(0, c);
    std::vector<std::uint8_t> pred(static_cast<std::size_t>(h) * w),
        gt(pred.size());
    for (auto& x : pred) x = static_cast<std::uint8_t>(label(gen));
    for (auto& x : gt) {
      x = static_cast<std::uint8_t>(gen() % 7 == 0 ? 255 : label(gen));
    }
    ConfusionMatrix cm(c + 1);
    cm.Accumulate(PseudoMask(Grid<std::uint8_t>(h, w, pred)),
                  PseudoMask(Grid<std::uint8_t>(h, w, gt)));
    for (int g = 0; g <= c; ++g) {
      for (int p = 0; p <= c; ++p) {
        std::uint64_t n = 0;
        for (std::size_t i = 0; i < gt.size(); ++i) n += gt[i] == g && pred[i] == p;
        v.Expect(cm.count(g, p) == n, "confusion cell");
      }
    }
    std::vector<std::optional<double>> iou, prec, rec;
    for (int k = 0; k <= c; ++k) {
      const oracle::Counts n = oracle::CountClass(pred, gt, k);
      iou.push_back(oracle::Ratio(n.tp, n.tp + n.fp + n.fn));
      prec.push_back(oracle::Ratio(n.tp, n.tp + n.fp));
      rec.push_back(oracle::Ratio(n.tp, n.tp + n.fn));
    }
    v.Expect(PerClassIou(cm) == iou, "per-class IoU");
    v.Expect(PerClassPrecision(cm) == prec, "per-class precision");
    v.Expect(PerClassRecall(cm) == rec, "per-class recall");
    bool any = false;
    for (auto x : gt) any = any || x != 255;
    if (!any) continue;
    const MetricReport r = Summarize(cm);
    v.Expect(r.miou == oracle::MeanDefined(iou), "mIoU");
    v.Expect(r.mean_precision == oracle::MeanDefined(prec), "precision");
    v.Expect(r.mean_recall == oracle::MeanDefined(rec), "recall");
  }

  // 2x2 worked example: gt [[1,1],[0,0]], pred [[1,0],[0,1]].
  ConfusionMatrix cm(2);
  cm.Accumulate(PseudoMask(Grid<std::uint8_t>(2, 2, {1, 0, 0, 1})),
                PseudoMask(Grid<std::uint8_t>(2, 2, {1, 1, 0, 0})));
  const MetricReport r = Summarize(cm);
  auto near = [](double a, double b) { return std::abs(a - b) < 0.005; };
  v.Expect(near(r.miou, 33.33), "example mIoU");
  v.Expect(near(r.mean_precision, 50.0), "example precision");
  v.Expect(near(r.mean_recall, 50.0), "example recall");
  std::ostringstream os;
  os.precision(4);
  os << "500 random pairs match the brute-force counter exactly; example mIoU "
     << r.miou << ", precision " << r.mean_precision << ", recall "
     << r.mean_recall;
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

// ---- 8: curriculum ------------------------------------------------------

std::string Criterion8() {
  Verdict v;
  const curriculum::ScaleSchedule s = curriculum::DefaultSchedule();
  const std::pair<int, int> expect[] = {{1, 8}, {3, 4}, {5, 2}, {7, 1}};
  for (const auto& [epoch, factor] : expect) {
    v.Expect(curriculum::ScheduleFactor(s, epoch) == factor,
             "factor at epoch " + std::to_string(epoch));
  }
  int cases = 0, removed = 0;
  for (int base = 0; base <= 4; ++base) {
    for (int noise = 0; noise <= 4; ++noise) {
      if (noise == base) continue;
      for (int p = 0; p < 64; ++p) {
        // Two uniform blocks side by side, one noisy pixel in each.
        PseudoMask m(8, 16, static_cast<std::uint8_t>(base));
        m.at(p / 8, p % 8) = static_cast<std::uint8_t>(noise);
        m.at(p % 8, 8 + p / 8) = static_cast<std::uint8_t>(noise);
        const PseudoMask d = curriculum::DownsampleMask(m, 8);
        ++cases;
        removed += d.at(0, 0) == base && d.at(0, 1) == base;
      }
    }
  }
  v.Expect(removed == cases, "noise survived");
  std::mt19937_64 gen(808);
  int identical = 0;
  for (int t = 0; t < 50; ++t) {
    RgbImage img(16, 24);
    for (auto& x : img.data) x = static_cast<std::uint8_t>(gen());
    PseudoMask m(16, 24);
    for (auto& x : m.labels().values()) x = static_cast<std::uint8_t>(gen() % 6);
    identical += curriculum::DownsampleImage(img, 1) == img &&
                 curriculum::DownsampleMask(m, 1) == m;
  }
  v.Expect(identical == 50, "factor-1 path altered data");
  std::ostringstream os;
  os << "schedule 1->8, 3->4, 5->2, 7->1; noise removed in " << removed << "/"
     << cases << " blocks; factor 1 identity on " << identical << "/50";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

// ---- 9: formats ---------------------------------------------------------

ErrorCode CodeOf(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

std::string Criterion9() {
  Verdict v;
  const fs::path dir = WorkDir("formats");
  std::mt19937_64 gen(909);
  std::uniform_int_distribution<int> side(1, 40);
  std::uniform_real_distribution<float> u(0.0f, 1.0f);
  int npy_ok = 0, png_ok = 0;
  for (int t = 0; t < 100; ++t) {
    const int h = side(gen), w = side(gen);
    std::vector<double> vals(static_cast<std::size_t>(h) * w);
    for (double& x : vals) x = static_cast<double>(u(gen));
    const Grid<double> g(h, w, vals);
    const fs::path npy = dir / ("a" + std::to_string(t) + ".npy");
    io::WriteNpy(npy, g);
    const std::string bytes = io::ReadFileBytes(npy);
    const RawMap back = io::ReadNpy(npy);
    io::WriteNpy(npy, back.grid());
    npy_ok += back.grid() == g && io::ReadFileBytes(npy) == bytes;

    std::vector<std::uint8_t> labels(vals.size());
    for (auto& x : labels) x = static_cast<std::uint8_t>(gen());
    const PseudoMask m(Grid<std::uint8_t>(h, w, labels));
    const fs::path png = dir / ("m" + std::to_string(t) + ".png");
    io::WriteMaskPng(png, m);
    png_ok += io::ReadMaskPng(png) == m;
  }
  v.Expect(npy_ok == 100, "npy round trip");
  v.Expect(png_ok == 100, "png round trip");

  const std::string good =
      io::EncodeNpy({io::NpyDtype::kFloat32, {2, 2}, {1, 2, 3, 4}});
  std::string magic = good;
  magic[0] = 'X';
  v.Expect(CodeOf([&] { io::DecodeNpy(magic); }) == ErrorCode::kBadMagic,
           "bad magic");
  std::string dtype = good;
  dtype.replace(dtype.find("<f4"), 3, "<i2");
  v.Expect(CodeOf([&] { io::DecodeNpy(dtype); }) ==
               ErrorCode::kUnsupportedDtype,
           "dtype");
  std::string header = good;
  header.replace(header.find("'shape'"), 7, "'shapf'");
  v.Expect(CodeOf([&] { io::DecodeNpy(header); }) == ErrorCode::kHeaderParse,
           "header");
  v.Expect(CodeOf([&] { io::DecodeNpy(good.substr(0, good.size() - 1)); }) ==
               ErrorCode::kTruncatedPayload,
           "truncation");
  v.Expect(CodeOf([] { io::DecodeMaskPng("\x89PNG garbage"); }) ==
               ErrorCode::kBadPng,
           "bad png");
  const std::string rgb = io::EncodeRgbPng(RgbImage(2, 2, 1));
  v.Expect(CodeOf([&] { io::DecodeMaskPng(rgb); }) ==
               ErrorCode::kDepthMismatch,
           "png depth");
  std::ostringstream os;
  os << "npy " << npy_ok << "/100 and png " << png_ok
     << "/100 bit-identical; malformed inputs raise the declared errors";
  return (v.ok() ? "PASS" : "FAIL") + std::string("|") + os.str() +
         (v.ok() ? "" : " (" + v.Detail() + ")");
}

// ---- 10: end-to-end determinism -----------------------------------------

int RunCli(const std::string& args) {
  const std::string cmd =
      std::string(CAMFORGE_CLI) + " " + args + " > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string Criterion10() {
  const fs::path root = WorkDir("determinism");
  const fs::path config = root / "config.json";
  io::WriteFileBytes(config, R"({
  "seed": 11,
  "synth": {"num_images": 24},
  "split": {"train_images": 16},
  "train": {"epochs": 8, "max_pairs": 16}
})");
  std::string reports[2];
  for (int run = 0; run < 2; ++run) {
    const std::string common = " --config " + config.string() + " --out " +
                               (root / ("run" + std::to_string(run))).string();
    for (const char* cmd : {"synth", "fuse", "train", "infer", "eval"}) {
      const int rc = RunCli(cmd + common);
      if (rc != 0) {
        return "FAIL|" + std::string(cmd) + " exited with " +
               std::to_string(rc);
      }
    }
    reports[run] = io::ReadFileBytes(root / ("run" + std::to_string(run)) /
                                     "report.json");
  }
  const bool same = reports[0] == reports[1];
  const bool valid =
      pipeline::ValidateReport(pipeline::Json::parse(reports[0])).empty();
  std::ostringstream os;
  os << "two CLI runs (synth, fuse, train, infer, eval) give "
     << (same ? "byte-identical" : "different") << " reports of "
     << reports[0].size() << " bytes" << (valid ? "" : ", report invalid");
  return (same && valid ? "PASS" : "FAIL") + std::string("|") + os.str();
}

}  // namespace
}  // namespace camforge

int main() {
  using namespace camforge;
  int failed = 0;
  auto report = [&](int n, const std::function<std::string()>& check) {
    std::string line;
    try {
      line = check();
    } catch (const std::exception& e) {
      line = std::string("FAIL|unexpected exception: ") + e.what();
    }
    const auto bar = line.find('|');
    const std::string verdict = line.substr(0, bar);
    failed += verdict != "PASS";
    std::cout << verdict << " criterion " << n << ": " << line.substr(bar + 1)
              << std::endl;
  };
  const auto pairs = FusionCorpus();
  report(1, [&] { return Criterion1(pairs); });
  report(2, [&] { return Criterion2(pairs); });
  report(3, Criterion3);
  const RefinerRun refiner = RunRefiner();
  report(4, [&] { return Criterion4(refiner); });
  report(5, [&] { return Criterion5(refiner); });
  report(6, Criterion6);
  report(7, Criterion7);
  report(8, Criterion8);
  report(9, Criterion9);
  report(10, Criterion10);
  std::cout << (failed == 0 ? "all criteria passed" : "criteria failed: ")
            << (failed == 0 ? "" : std::to_string(failed)) << std::endl;
  return failed == 0 ? 0 : 1;
}
