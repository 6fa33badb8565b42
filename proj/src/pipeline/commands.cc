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
#include "camforge/pipeline/commands.h"

#include <algorithm>
#include <chrono>
#include <map>
#include <optional>

#include "camforge/cam.h"
#include "camforge/curriculum.h"
#include "camforge/error.h"
#include "camforge/io/checkpoint.h"
#include "camforge/io/npy.h"
#include "camforge/io/png.h"
#include "camforge/metrics.h"
#include "camforge/pipeline/corpus.h"
#include "camforge/pipeline/lock.h"
#include "camforge/pipeline/report.h"

namespace camforge::pipeline {
namespace fs = std::filesystem;

namespace {

fs::path FusedDir(const RunConfig& c, std::string_view mode) {
  return c.out / "fused" / std::string(mode);
}

fs::path RefinedDir(const RunConfig& c) { return c.out / "refined"; }

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + dir.string() + ": " + ec.message());
  }
}

void RequireDir(const fs::path& dir, const char* hint) {
  if (!fs::is_directory(dir)) {
    throw Error(ErrorCode::kIoError,
                dir.string() + " does not exist (run " + hint + " first)");
  }
}

std::vector<FusionMode> SelectedModes(const std::string& fusion) {
  if (fusion == "all") {
    return {FusionMode::kOr, FusionMode::kAnd, FusionMode::kAverage};
  }
  return {ParseFusionMode(fusion)};
}

// Directory holding the stacks of a variant, or nullopt for ground truth.
std::optional<fs::path> VariantDir(const RunConfig& c,
                                   const std::string& variant) {
  if (variant == "gt") return std::nullopt;
  if (variant == "cam_a") return c.corpus_dir() / "cams_a";
  if (variant == "cam_b") return c.corpus_dir() / "cams_b";
  if (variant == "orandnet") return RefinedDir(c);
  return FusedDir(c, variant);
}

PseudoMask MaskFromDir(const fs::path& dir, const CorpusEntry& e,
                       const CorpusIndex& index, double bg) {
  if (e.classes.empty()) return PseudoMask(index.height, index.width);
  return ToPseudoMask(ReadStack(dir, e), bg);
}

fs::path GtPath(const RunConfig& c, const CorpusEntry& e) {
  return c.corpus_dir() / "gt" / (e.id + ".png");
}

Json ConfigEcho(const RunConfig& c) {
  Json j = ToJson(c);
  j.erase("paths");
  return j;
}

void WriteJson(const fs::path& path, const Json& j) {
  io::WriteFileBytes(path, j.dump(2) + "\n");
}

}  // namespace

SplitRange ResolveSplit(int train_images, int count) {
  if (train_images < 0 || train_images >= count) return {count, 0};
  return {train_images, train_images};
}

void CmdSynth(const RunConfig& config, std::ostream& log) {
  config.Validate();
  OutputLock lock(config.out);
  const CorpusIndex index = WriteCorpus(config.corpus_dir(),
                                        config.corpus_spec());
  log << "synth: wrote " << index.images.size() << " images to "
      << config.corpus_dir().string() << "\n";
}

void CmdFuse(const RunConfig& config, std::ostream& log) {
  config.Validate();
  OutputLock lock(config.out);
  const CorpusIndex index = ReadManifest(config.corpus_dir());
  const auto modes = SelectedModes(config.fusion);
  for (FusionMode m : modes) MakeDir(FusedDir(config, FusionModeName(m)));
  for (const auto& e : index.images) {
    if (e.classes.empty()) continue;
    const CamStack a = ReadStack(config.corpus_dir() / "cams_a", e);
    const CamStack b = ReadStack(config.corpus_dir() / "cams_b", e);
    for (FusionMode m : modes) {
      WriteStack(FusedDir(config, FusionModeName(m)), StackFuse(a, b, m));
    }
  }
  log << "fuse: " << index.images.size() << " images, " << modes.size()
      << " mode(s) under " << (config.out / "fused").string() << "\n";
}

orand::TrainResult CmdTrain(const RunConfig& config, std::ostream& log) {
  config.Validate();
  OutputLock lock(config.out);
  const CorpusIndex index = ReadManifest(config.corpus_dir());
  const fs::path or_dir = FusedDir(config, "or");
  const fs::path and_dir = FusedDir(config, "and");
  RequireDir(or_dir, "fuse");
  RequireDir(and_dir, "fuse");

  const SplitRange split =
      ResolveSplit(config.train_images, static_cast<int>(index.images.size()));
  const std::size_t cap = config.max_pairs > 0
                              ? static_cast<std::size_t>(config.max_pairs)
                              : static_cast<std::size_t>(-1);
  std::vector<orand::TrainSample> dataset;
  for (int i = 0; i < split.train_end && dataset.size() < cap; ++i) {
    const CorpusEntry& e = index.images[i];
    if (e.classes.empty()) continue;
    const CamStack o = ReadStack(or_dir, e);
    const CamStack a = ReadStack(and_dir, e);
    for (int k : e.classes) {
      if (dataset.size() >= cap) break;
      dataset.push_back({o.at(k), a.at(k), k, e.id});
    }
  }

  const orand::TrainConfig tc = config.train_config();
  orand::TrainResult result =
      orand::Train(dataset, tc, config.fcn_architecture());

  if (!config.checkpoint_path().parent_path().empty()) {
    MakeDir(config.checkpoint_path().parent_path());
  }
  io::SaveCheckpoint(config.checkpoint_path(), {result.params, tc});

  Json history;
  history["schema"] = "cam-forge/history";
  history["version"] = 1;
  history["pairs"] = dataset.size();
  Json epochs = Json::array();
  for (const auto& r : result.history) {
    epochs.push_back(
        {{"epoch", r.epoch}, {"mean_loss", r.mean_loss}, {"lr", r.lr}});
  }
  history["epochs"] = std::move(epochs);
  WriteJson(config.out / "history.json", history);

  log << "train: " << dataset.size() << " pairs, " << tc.epochs
      << " epochs";
  if (!result.history.empty()) {
    log << ", loss " << result.history.front().mean_loss << " -> "
        << result.history.back().mean_loss;
  }
  log << "\n";
  return result;
}

void CmdInfer(const RunConfig& config, std::ostream& log) {
  config.Validate();
  OutputLock lock(config.out);
  const CorpusIndex index = ReadManifest(config.corpus_dir());
  const fs::path or_dir = FusedDir(config, "or");
  RequireDir(or_dir, "fuse");
  const io::Checkpoint ck = io::LoadCheckpoint(config.checkpoint_path());
  MakeDir(RefinedDir(config));
  for (const auto& e : index.images) {
    if (e.classes.empty()) continue;
    WriteStack(RefinedDir(config),
               orand::InferStack(ck.params, ReadStack(or_dir, e)));
  }
  log << "infer: refined " << index.images.size() << " images into "
      << RefinedDir(config).string() << "\n";
}

void CmdSchedule(const RunConfig& config, std::ostream& log) {
  config.Validate();
  OutputLock lock(config.out);
  const CorpusIndex index = ReadManifest(config.corpus_dir());
  const curriculum::ScaleSchedule schedule = config.schedule();
  const auto source = VariantDir(config, config.schedule_masks);
  if (source) RequireDir(*source, "the stage producing the mask source");

  const SplitRange split =
      ResolveSplit(config.train_images, static_cast<int>(index.images.size()));
  std::vector<curriculum::ImagePair> pairs;
  std::vector<std::string> ids;
  for (int i = 0; i < split.train_end; ++i) {
    const CorpusEntry& e = index.images[i];
    RgbImage image =
        io::ReadRgbPng(config.corpus_dir() / "images" / (e.id + ".png"));
    PseudoMask mask = source ? MaskFromDir(*source, e, index,
                                           config.bg_threshold)
                             : io::ReadMaskPng(GtPath(config, e));
    pairs.push_back({std::move(image), std::move(mask)});
    ids.push_back(e.id);
  }

  int epochs = config.schedule_epochs;
  if (epochs == 0) {
    epochs = schedule.entries.empty() ? 1
                                      : schedule.entries.back().last_epoch + 1;
  }
  const fs::path root = config.out / "schedule";
  Json epoch_list = Json::array();
  for (int epoch = 1; epoch <= epochs; ++epoch) {
    const auto data = curriculum::BuildEpochDataset(pairs, schedule, epoch);
    const fs::path dir = root / ("epoch_" + std::to_string(epoch));
    MakeDir(dir / "images");
    MakeDir(dir / "masks");
    for (std::size_t i = 0; i < data.size(); ++i) {
      io::WriteRgbPng(dir / "images" / (ids[i] + ".png"), data[i].image);
      io::WriteMaskPng(dir / "masks" / (ids[i] + ".png"), data[i].mask);
    }
    Json entry = {{"epoch", epoch},
                  {"factor", curriculum::ScheduleFactor(schedule, epoch)}};
    if (!data.empty()) {
      entry["height"] = data.front().mask.height();
      entry["width"] = data.front().mask.width();
    }
    epoch_list.push_back(std::move(entry));
  }
  Json manifest;
  manifest["schema"] = "cam-forge/schedule";
  manifest["version"] = 1;
  manifest["masks"] = config.schedule_masks;
  manifest["entries"] = ToJson(schedule);
  manifest["epochs"] = std::move(epoch_list);
  manifest["images"] = ids;
  WriteJson(root / "schedule.json", manifest);
  log << "schedule: " << epochs << " epochs of " << ids.size()
      << " pairs under " << root.string() << "\n";
}

namespace {

Json EvalMasks(const RunConfig& config, const EvalOptions& options,
               std::ostream& log) {
  const fs::path gt_dir = options.gt_masks.empty()
                              ? config.corpus_dir() / "gt"
                              : options.gt_masks;
  RequireDir(options.pred_masks, "a mask exporter");
  std::vector<fs::path> names;
  for (const auto& ent : fs::directory_iterator(options.pred_masks)) {
    if (ent.is_regular_file() && ent.path().extension() == ".png") {
      names.push_back(ent.path().filename());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) {
    throw Error(ErrorCode::kIoError,
                "no .png masks in " + options.pred_masks.string());
  }
  std::vector<std::pair<PseudoMask, PseudoMask>> masks;
  int max_label = 0;
  for (const auto& name : names) {
    PseudoMask pred = io::ReadMaskPng(options.pred_masks / name);
    PseudoMask gt = io::ReadMaskPng(gt_dir / name);
    for (const PseudoMask* m : {&pred, &gt}) {
      for (std::uint8_t v : m->present_labels()) {
        if (v != kIgnoreLabel) max_label = std::max<int>(max_label, v);
      }
    }
    masks.emplace_back(std::move(pred), std::move(gt));
  }
  ConfusionMatrix cm(max_label + 1);
  for (const auto& [pred, gt] : masks) cm.Accumulate(pred, gt);
  const EvaluationInfo info{"masks", "masks", static_cast<int>(masks.size()),
                            max_label + 1, config.bg_threshold};
  log << "eval: " << masks.size() << " mask pairs\n";
  return BuildReport(info, ConfigEcho(config),
                     {{"pred", Summarize(cm, config.metrics)}});
}

Json EvalPipeline(const RunConfig& config, const EvalOptions& options,
                  std::ostream& log) {
  const CorpusIndex index = ReadManifest(config.corpus_dir());
  const int count = static_cast<int>(index.images.size());
  const SplitRange split = ResolveSplit(config.train_images, count);
  if (split.eval_begin >= count) {
    throw Error(ErrorCode::kEmptyDataset, "no images to evaluate");
  }
  std::vector<PseudoMask> gts;
  for (int i = split.eval_begin; i < count; ++i) {
    gts.push_back(io::ReadMaskPng(GtPath(config, index.images[i])));
  }

  std::vector<VariantResult> results;
  for (const char* variant : kPipelineVariants) {
    const fs::path dir = *VariantDir(config, variant);
    if (!fs::is_directory(dir)) {
      log << "eval: " << variant << " skipped, " << dir.string()
          << " is missing\n";
      results.emplace_back(variant, std::nullopt);
      continue;
    }
    const fs::path mask_dir = config.out / "masks" / variant;
    const fs::path color_dir = config.out / "masks_color" / variant;
    if (options.write_masks) MakeDir(mask_dir);
    if (options.color_masks) MakeDir(color_dir);
    ConfusionMatrix cm(index.num_classes + 1);
    for (int i = split.eval_begin; i < count; ++i) {
      const CorpusEntry& e = index.images[i];
      const PseudoMask pred = MaskFromDir(dir, e, index, config.bg_threshold);
      cm.Accumulate(pred, gts[i - split.eval_begin]);
      if (options.write_masks) {
        io::WriteMaskPng(mask_dir / (e.id + ".png"), pred);
      }
      if (options.color_masks) {
        io::WriteColorMaskPng(color_dir / (e.id + ".png"), pred);
      }
    }
    MetricReport r = Summarize(cm, config.metrics);
    log << "eval: " << variant << " mIoU " << r.miou << " precision "
        << r.mean_precision << " recall " << r.mean_recall << "\n";
    results.emplace_back(variant, std::move(r));
  }
  const EvaluationInfo info{"pipeline",
                            split.eval_begin > 0 ? "heldout" : "all",
                            count - split.eval_begin, index.num_classes + 1,
                            config.bg_threshold};
  return BuildReport(info, ConfigEcho(config), results);
}

}  // namespace

Json CmdEval(const RunConfig& config, const EvalOptions& options,
             std::ostream& log) {
  config.Validate();
  OutputLock lock(config.out);
  const auto start = std::chrono::steady_clock::now();
  Json report = options.pred_masks.empty()
                    ? EvalPipeline(config, options, log)
                    : EvalMasks(config, options, log);
  const auto problems = ValidateReport(report);
  if (!problems.empty()) {
    // Only reachable through a bug; the report is built to the schema.
    throw Error(ErrorCode::kInvalidValue,
                "report fails its schema: " + problems.front());
  }
  WriteJson(config.out / "report.json", report);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  WriteJson(config.out / kTimingFileName,
            {{"command", "eval"}, {"wall_clock_seconds", seconds}});
  return report;
}

}  // namespace camforge::pipeline
