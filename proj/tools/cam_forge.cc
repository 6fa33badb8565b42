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
// cam-forge: command-line front end for the CAM fusion / refinement
// pipeline. See README.md for the exit code table.

#include <cstdint>
#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "camforge/error.h"
#include "camforge/pipeline/commands.h"
#include "camforge/pipeline/config.h"
#include "camforge/pipeline/report.h"

namespace {

using camforge::pipeline::RunConfig;

// Flags given on the command line, applied over the config file.
class Overrides {
 public:
  template <class T, class Setter>
  void Option(CLI::App* app, const std::string& name, const std::string& help,
              Setter set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    items_.emplace_back(opt, [value, set](RunConfig& c) { set(c, *value); });
  }

  template <class Setter>
  void Flag(CLI::App* app, const std::string& name, const std::string& help,
            Setter set) {
    CLI::Option* opt = app->add_flag(name, help);
    items_.emplace_back(opt, [set](RunConfig& c) { set(c); });
  }

  void Apply(RunConfig* c) const {
    for (const auto& [opt, apply] : items_) {
      if (opt->count() > 0) apply(*c);
    }
  }

 private:
  std::vector<std::pair<CLI::Option*, std::function<void(RunConfig&)>>>
      items_;
};

struct Command {
  CLI::App* app = nullptr;
  Overrides overrides;
  std::string config_path;
  bool print_config = false;
};

void AddCommon(Command* cmd) {
  cmd->app->add_option("--config", cmd->config_path, "JSON run configuration")
      ->check(CLI::ExistingFile);
  cmd->app->add_flag("--print-config", cmd->print_config,
                     "Print the effective configuration and exit");
  auto& o = cmd->overrides;
  o.Option<std::uint64_t>(cmd->app, "--seed", "Master seed",
                          [](RunConfig& c, std::uint64_t v) { c.seed = v; });
  o.Option<std::string>(cmd->app, "--out", "Output directory",
                        [](RunConfig& c, const std::string& v) { c.out = v; });
  o.Option<std::string>(
      cmd->app, "--corpus", "Corpus directory (default <out>/corpus)",
      [](RunConfig& c, const std::string& v) { c.corpus = v; });
}

void AddSplit(Command* cmd) {
  cmd->overrides.Option<int>(
      cmd->app, "--train-images",
      "Images [0, n) are the training split; -1 uses every image",
      [](RunConfig& c, int v) { c.train_images = v; });
}

void AddThreshold(Command* cmd) {
  cmd->overrides.Option<double>(
      cmd->app, "--bg-threshold", "Constant background score in (0, 1)",
      [](RunConfig& c, double v) { c.bg_threshold = v; });
}

void AddCheckpoint(Command* cmd) {
  cmd->overrides.Option<std::string>(
      cmd->app, "--checkpoint", "Checkpoint path (default <out>/checkpoint.npz)",
      [](RunConfig& c, const std::string& v) { c.checkpoint = v; });
}

void AddSynthFlags(Command* cmd) {
  auto& o = cmd->overrides;
  auto* app = cmd->app;
  o.Option<int>(app, "--num-images", "Images to generate",
                [](RunConfig& c, int v) { c.synth.num_images = v; });
  o.Option<int>(app, "--height", "Image height (multiple of 8)",
                [](RunConfig& c, int v) { c.synth.height = v; });
  o.Option<int>(app, "--width", "Image width (multiple of 8)",
                [](RunConfig& c, int v) { c.synth.width = v; });
  o.Option<int>(app, "--num-classes", "Foreground class vocabulary size",
                [](RunConfig& c, int v) { c.synth.num_classes = v; });
  o.Option<int>(app, "--classes-min", "Fewest classes per image",
                [](RunConfig& c, int v) { c.synth.classes_min = v; });
  o.Option<int>(app, "--classes-max", "Most classes per image",
                [](RunConfig& c, int v) { c.synth.classes_max = v; });
  o.Option<std::string>(
      app, "--shapes", "ellipse, rectangle or mixed",
      [](RunConfig& c, const std::string& v) {
        c.synth.shapes = camforge::synth::ParseShapeFamily(v);
      });
  o.Option<std::string>(
      app, "--false-overlap", "disjoint, overlapping or none",
      [](RunConfig& c, const std::string& v) {
        c.synth.false_overlap = camforge::synth::ParseFalseOverlap(v);
      });
}

void AddTrainFlags(Command* cmd) {
  auto& o = cmd->overrides;
  auto* app = cmd->app;
  o.Option<int>(app, "--epochs", "Training epochs",
                [](RunConfig& c, int v) { c.train.epochs = v; });
  o.Option<double>(app, "--lr", "Initial learning rate",
                   [](RunConfig& c, double v) { c.train.lr0 = v; });
  o.Option<double>(app, "--poly-power", "Poly schedule exponent",
                   [](RunConfig& c, double v) { c.train.poly_power = v; });
  o.Option<double>(app, "--momentum", "SGD momentum",
                   [](RunConfig& c, double v) { c.train.momentum = v; });
  o.Option<double>(app, "--weight-decay", "L2 weight decay",
                   [](RunConfig& c, double v) { c.train.weight_decay = v; });
  o.Option<double>(app, "--label-smoothing", "Label smoothing epsilon",
                   [](RunConfig& c, double v) { c.train.label_smoothing = v; });
  o.Option<int>(app, "--batch-size", "Samples per SGD step",
                [](RunConfig& c, int v) { c.train.batch_size = v; });
  o.Option<long>(app, "--total-steps",
                 "Poly schedule horizon; 0 derives it from the epochs",
                 [](RunConfig& c, long v) { c.train.total_steps = v; });
  o.Option<int>(app, "--max-pairs", "Cap on training pairs; 0 means none",
                [](RunConfig& c, int v) { c.max_pairs = v; });
  o.Option<std::string>(
      app, "--architecture", "default or vgg16",
      [](RunConfig& c, const std::string& v) { c.architecture = v; });
}

void AddScheduleFlags(Command* cmd) {
  auto& o = cmd->overrides;
  auto* app = cmd->app;
  o.Option<std::vector<int>>(
      app, "--factors", "Downsampling factors per stage",
      [](RunConfig& c, const std::vector<int>& v) { c.schedule_factors = v; });
  o.Option<std::vector<int>>(app, "--boundaries", "Stage boundaries",
                             [](RunConfig& c, const std::vector<int>& v) {
                               c.schedule_boundaries = v;
                             });
  o.Option<std::string>(
      app, "--boundary-mode", "cumulative or durations",
      [](RunConfig& c, const std::string& v) {
        c.schedule_mode = camforge::curriculum::ParseBoundaryMode(v);
      });
  o.Option<int>(app, "--schedule-epochs",
                "Epochs to materialize; 0 means one past the last stage",
                [](RunConfig& c, int v) { c.schedule_epochs = v; });
  o.Option<std::string>(
      app, "--masks", "orandnet, gt, or, and, avg, cam_a or cam_b",
      [](RunConfig& c, const std::string& v) { c.schedule_masks = v; });
}

RunConfig Resolve(const Command& cmd) {
  RunConfig c;
  if (!cmd.config_path.empty()) c = camforge::pipeline::LoadRunConfig(cmd.config_path);
  try {
    cmd.overrides.Apply(&c);
  } catch (const camforge::Error& e) {
    throw camforge::Error(camforge::ErrorCode::kConfigError, e.what());
  }
  c.Validate();
  return c;
}

int ReportError(camforge::ErrorCode code, const std::string& message) {
  const int exit_code = camforge::ExitCodeFor(code);
  camforge::pipeline::Json err = {
      {"error", std::string(camforge::ErrorCodeName(code))},
      {"exit_code", exit_code},
      {"message", message}};
  std::cerr << err.dump() << "\n";
  return exit_code;
}

int ReportInternalError(const std::string& message) {
  camforge::pipeline::Json err = {
      {"error", "InternalError"}, {"exit_code", 1}, {"message", message}};
  std::cerr << err.dump() << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cam-forge: fuse, refine and evaluate class activation maps"};
  app.set_version_flag("--version",
                       "cam-forge " +
                           std::string(camforge::pipeline::ToolVersion()));
  app.require_subcommand(1);

  Command synth, fuse, train, infer, schedule, eval;
  synth.app = app.add_subcommand("synth", "Generate a synthetic corpus");
  fuse.app = app.add_subcommand("fuse", "Write OR / AND / AVG fused CAMs");
  train.app = app.add_subcommand("train", "Train the refiner on OR -> AND");
  infer.app = app.add_subcommand("infer", "Refine OR CAMs with a checkpoint");
  schedule.app = app.add_subcommand(
      "schedule", "Materialize per-epoch downsampled image / mask pairs");
  eval.app = app.add_subcommand("eval", "Write the comparison report");

  for (Command* c : {&synth, &fuse, &train, &infer, &schedule, &eval}) {
    AddCommon(c);
  }
  AddSynthFlags(&synth);
  fuse.overrides.Option<std::string>(
      fuse.app, "--fusion", "all, or, and or avg",
      [](RunConfig& c, const std::string& v) { c.fusion = v; });
  AddTrainFlags(&train);
  AddSplit(&train);
  AddCheckpoint(&train);
  AddCheckpoint(&infer);
  AddScheduleFlags(&schedule);
  AddSplit(&schedule);
  AddThreshold(&schedule);
  AddSplit(&eval);
  AddThreshold(&eval);
  eval.overrides.Flag(eval.app, "--exclude-background-pr",
                      "Leave background out of the precision / recall means",
                      [](RunConfig& c) {
                        c.metrics.include_background_in_pr = false;
                      });
  camforge::pipeline::EvalOptions eval_options;
  bool no_masks = false;
  eval.app->add_option("--pred-masks", eval_options.pred_masks,
                       "Compare label PNGs in this directory instead");
  eval.app->add_option("--gt-masks", eval_options.gt_masks,
                       "Ground-truth PNGs for --pred-masks (default "
                       "<corpus>/gt)");
  eval.app->add_flag("--no-masks", no_masks,
                     "Do not write pseudo-mask PNGs");
  eval.app->add_flag("--color", eval_options.color_masks,
                     "Also write VOC-colored pseudo-masks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return ReportError(camforge::ErrorCode::kConfigError, e.what());
  }
  eval_options.write_masks = !no_masks;

  try {
    for (Command* cmd : {&synth, &fuse, &train, &infer, &schedule, &eval}) {
      if (!cmd->app->parsed()) continue;
      const RunConfig config = Resolve(*cmd);
      if (cmd->print_config) {
        std::cout << camforge::pipeline::ToJson(config).dump(2) << "\n";
        return 0;
      }
      if (cmd == &synth) camforge::pipeline::CmdSynth(config, std::cerr);
      if (cmd == &fuse) camforge::pipeline::CmdFuse(config, std::cerr);
      if (cmd == &train) camforge::pipeline::CmdTrain(config, std::cerr);
      if (cmd == &infer) camforge::pipeline::CmdInfer(config, std::cerr);
      if (cmd == &schedule) camforge::pipeline::CmdSchedule(config, std::cerr);
      if (cmd == &eval) {
        camforge::pipeline::CmdEval(config, eval_options, std::cerr);
      }
    }
  } catch (const camforge::Error& e) {
    return ReportError(e.code(), e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return ReportError(camforge::ErrorCode::kIoError, e.what());
  } catch (const std::exception& e) {
    return ReportInternalError(e.what());
  }
  return 0;
}
