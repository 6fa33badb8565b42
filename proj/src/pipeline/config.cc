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
#include "camforge/pipeline/config.h"

#include <cmath>

#include "camforge/error.h"
#include "camforge/io/npy.h"

namespace camforge::pipeline {
namespace {

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorCode::kConfigError, "config: " + what);
}

bool OneOf(const std::string& v, std::initializer_list<const char*> options) {
  for (const char* o : options) {
    if (v == o) return true;
  }
  return false;
}

}  // namespace

std::filesystem::path RunConfig::corpus_dir() const {
  return corpus.empty() ? out / "corpus" : corpus;
}

std::filesystem::path RunConfig::checkpoint_path() const {
  return checkpoint.empty() ? out / "checkpoint.npz" : checkpoint;
}

curriculum::ScaleSchedule RunConfig::schedule() const {
  return curriculum::MakeSchedule(schedule_factors, schedule_boundaries,
                                  schedule_mode);
}

orand::FcnArchitecture RunConfig::fcn_architecture() const {
  if (architecture == "default") return orand::DefaultArchitecture();
  if (architecture == "vgg16") return orand::Vgg16Architecture();
  Fail("architecture must be \"default\" or \"vgg16\", got \"" +
       architecture + "\"");
}

synth::CorpusSpec RunConfig::corpus_spec() const {
  synth::CorpusSpec s = synth;
  s.seed = seed;
  return s;
}

orand::TrainConfig RunConfig::train_config() const {
  orand::TrainConfig t = train;
  t.seed = seed;
  return t;
}

void RunConfig::Validate() const {
  if (out.empty()) Fail("paths.out must not be empty");
  if (!OneOf(fusion, {"all", "or", "and", "avg"})) {
    Fail("fusion must be one of all, or, and, avg");
  }
  if (!(bg_threshold > 0.0 && bg_threshold < 1.0)) {
    Fail("bg_threshold must lie in (0, 1)");
  }
  corpus_spec().Validate();
  train_config().Validate();
  fcn_architecture();
  if (train_images < -1) Fail("split.train_images must be >= -1");
  if (max_pairs < 0) Fail("train.max_pairs must be >= 0");
  schedule();
  if (schedule_epochs < 0) Fail("schedule.epochs must be >= 0");
  if (!OneOf(schedule_masks,
             {"orandnet", "gt", "or", "and", "avg", "cam_a", "cam_b"})) {
    Fail("schedule.masks must name a mask source");
  }
}

void ApplyJson(const Json& json, RunConfig* c) {
  ObjectReader r(json, "config");
  if (const Json* p = r.Child("paths")) {
    ObjectReader pr(*p, "config.paths");
    std::string s;
    pr.Get("out", &s);
    if (!s.empty()) c->out = s;
    s.clear();
    pr.Get("corpus", &s);
    if (!s.empty()) c->corpus = s;
    s.clear();
    pr.Get("checkpoint", &s);
    if (!s.empty()) c->checkpoint = s;
    pr.Finish();
  }
  r.Get("seed", &c->seed);
  r.Get("fusion", &c->fusion);
  r.Get("bg_threshold", &c->bg_threshold);
  if (const Json* s = r.Child("synth")) {
    if (s->is_object() && s->contains("seed")) {
      Fail("synth.seed is taken from the top-level seed");
    }
    ReadCorpusSpec(*s, &c->synth);
  }
  if (const Json* t = r.Child("train")) {
    if (t->is_object() && t->contains("seed")) {
      Fail("train.seed is taken from the top-level seed");
    }
    ObjectReader tr(*t, "config.train");
    ReadTrainConfig(tr, &c->train);
    tr.Get("architecture", &c->architecture);
    tr.Get("max_pairs", &c->max_pairs);
    tr.Finish();
  }
  if (const Json* s = r.Child("split")) {
    ObjectReader sr(*s, "config.split");
    sr.Get("train_images", &c->train_images);
    sr.Finish();
  }
  if (const Json* s = r.Child("schedule")) {
    ObjectReader sr(*s, "config.schedule");
    sr.Get("factors", &c->schedule_factors);
    sr.Get("boundaries", &c->schedule_boundaries);
    std::string mode;
    sr.Get("mode", &mode);
    if (!mode.empty()) {
      try {
        c->schedule_mode = curriculum::ParseBoundaryMode(mode);
      } catch (const Error& e) {
        Fail(std::string("schedule.mode: ") + e.what());
      }
    }
    sr.Get("epochs", &c->schedule_epochs);
    sr.Get("masks", &c->schedule_masks);
    sr.Finish();
  }
  if (const Json* m = r.Child("metrics")) {
    ObjectReader mr(*m, "config.metrics");
    mr.Get("include_background_in_pr", &c->metrics.include_background_in_pr);
    mr.Finish();
  }
  r.Finish();
}

RunConfig LoadRunConfig(const std::filesystem::path& path) {
  const std::string text = io::ReadFileBytes(path);
  Json json;
  try {
    json = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    Fail(path.string() + ": " + e.what());
  }
  RunConfig c;
  ApplyJson(json, &c);
  return c;
}

Json ToJson(const RunConfig& c) {
  Json j;
  j["paths"] = {{"out", c.out.generic_string()},
                {"corpus", c.corpus_dir().generic_string()},
                {"checkpoint", c.checkpoint_path().generic_string()}};
  j["seed"] = c.seed;
  j["fusion"] = c.fusion;
  j["bg_threshold"] = c.bg_threshold;
  Json synth = ToJson(c.synth);
  synth.erase("seed");
  j["synth"] = std::move(synth);
  Json train = ToJson(c.train);
  train.erase("seed");
  train["architecture"] = c.architecture;
  train["max_pairs"] = c.max_pairs;
  j["train"] = std::move(train);
  j["split"] = {{"train_images", c.train_images}};
  j["schedule"] = {
      {"factors", c.schedule_factors},
      {"boundaries", c.schedule_boundaries},
      {"mode", std::string(curriculum::BoundaryModeName(c.schedule_mode))},
      {"epochs", c.schedule_epochs},
      {"masks", c.schedule_masks}};
  j["metrics"] = {
      {"include_background_in_pr", c.metrics.include_background_in_pr}};
  return j;
}

}  // namespace camforge::pipeline
