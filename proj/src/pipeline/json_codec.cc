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
#include "camforge/pipeline/json_codec.h"

#include <limits>

#include "camforge/error.h"

namespace camforge::pipeline {

ObjectReader::ObjectReader(const Json& json, std::string where)
    : json_(json), where_(std::move(where)) {
  if (!json_.is_object()) {
    throw Error(ErrorCode::kConfigError, where_ + ": expected a JSON object");
  }
}

const Json* ObjectReader::Find(const char* key) {
  seen_.insert(key);
  auto it = json_.find(key);
  return it == json_.end() ? nullptr : &*it;
}

void ObjectReader::Fail(const char* key, const char* want) const {
  throw Error(ErrorCode::kConfigError,
              where_ + "." + key + ": expected " + want);
}

void ObjectReader::Get(const char* key, bool* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_boolean()) Fail(key, "a boolean");
    *out = j->get<bool>();
  }
}

void ObjectReader::Get(const char* key, int* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_number_integer()) Fail(key, "an integer");
    const auto v = j->get<long long>();
    if (v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max()) {
      Fail(key, "an integer in int range");
    }
    *out = static_cast<int>(v);
  }
}

void ObjectReader::Get(const char* key, long* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_number_integer()) Fail(key, "an integer");
    *out = j->get<long>();
  }
}

void ObjectReader::Get(const char* key, std::uint64_t* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_number_unsigned()) Fail(key, "a non-negative integer");
    *out = j->get<std::uint64_t>();
  }
}

void ObjectReader::Get(const char* key, double* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_number()) Fail(key, "a number");
    *out = j->get<double>();
  }
}

void ObjectReader::Get(const char* key, std::string* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_string()) Fail(key, "a string");
    *out = j->get<std::string>();
  }
}

void ObjectReader::Get(const char* key, std::vector<int>* out) {
  if (const Json* j = Find(key)) {
    if (!j->is_array()) Fail(key, "an array of integers");
    std::vector<int> v;
    for (const auto& e : *j) {
      if (!e.is_number_integer()) Fail(key, "an array of integers");
      v.push_back(e.get<int>());
    }
    *out = std::move(v);
  }
}

const Json* ObjectReader::Child(const char* key) { return Find(key); }

void ObjectReader::Finish() const {
  for (const auto& [key, _] : json_.items()) {
    if (!seen_.count(key)) {
      throw Error(ErrorCode::kConfigError,
                  where_ + ": unknown key \"" + key + "\"");
    }
  }
}

Json ToJson(const orand::FcnArchitecture& arch) {
  Json layers = Json::array();
  for (const auto& l : arch.layers) {
    Json j;
    j["kind"] = std::string(orand::LayerKindName(l.kind));
    switch (l.kind) {
      case orand::LayerKind::kConv:
        j["kernel"] = l.kernel;
        j["in_channels"] = l.in_channels;
        j["out_channels"] = l.out_channels;
        break;
      case orand::LayerKind::kUpsample:
        j["factor"] = l.factor;
        break;
      default:
        break;
    }
    layers.push_back(std::move(j));
  }
  return layers;
}

orand::FcnArchitecture ArchitectureFromJson(const Json& json) {
  if (!json.is_array()) {
    throw Error(ErrorCode::kConfigError, "architecture: expected an array");
  }
  orand::FcnArchitecture arch;
  for (std::size_t i = 0; i < json.size(); ++i) {
    ObjectReader r(json[i], "architecture[" + std::to_string(i) + "]");
    std::string kind;
    r.Get("kind", &kind);
    orand::LayerSpec l;
    try {
      l.kind = orand::ParseLayerKind(kind);
    } catch (const Error& e) {
      throw Error(ErrorCode::kConfigError, r.where() + ": " + e.what());
    }
    r.Get("kernel", &l.kernel);
    r.Get("in_channels", &l.in_channels);
    r.Get("out_channels", &l.out_channels);
    r.Get("factor", &l.factor);
    r.Finish();
    arch.layers.push_back(l);
  }
  arch.Validate();
  return arch;
}

Json ToJson(const orand::TrainConfig& c) {
  Json j;
  j["lr0"] = c.lr0;
  j["poly_power"] = c.poly_power;
  j["momentum"] = c.momentum;
  j["weight_decay"] = c.weight_decay;
  j["label_smoothing"] = c.label_smoothing;
  j["batch_size"] = c.batch_size;
  j["epochs"] = c.epochs;
  j["total_steps"] = c.total_steps;
  j["seed"] = c.seed;
  return j;
}

void ReadTrainConfig(ObjectReader& r, orand::TrainConfig* c) {
  r.Get("lr0", &c->lr0);
  r.Get("poly_power", &c->poly_power);
  r.Get("momentum", &c->momentum);
  r.Get("weight_decay", &c->weight_decay);
  r.Get("label_smoothing", &c->label_smoothing);
  r.Get("batch_size", &c->batch_size);
  r.Get("epochs", &c->epochs);
  r.Get("total_steps", &c->total_steps);
  r.Get("seed", &c->seed);
}

Json ToJson(const synth::CorpusSpec& s) {
  Json j;
  j["height"] = s.height;
  j["width"] = s.width;
  j["num_images"] = s.num_images;
  j["num_classes"] = s.num_classes;
  j["classes_min"] = s.classes_min;
  j["classes_max"] = s.classes_max;
  j["coverage_min"] = s.coverage_min;
  j["coverage_max"] = s.coverage_max;
  j["shapes"] = std::string(synth::ShapeFamilyName(s.shapes));
  j["false_overlap"] = std::string(synth::FalseOverlapName(s.false_overlap));
  j["seed"] = s.seed;
  j["peaky"] = {
      {"bump_count", s.peaky.bump_count},
      {"bump_radius", s.peaky.bump_radius},
      {"sharpness", s.peaky.sharpness},
      {"false_peak_count", s.peaky.false_peak_count},
      {"false_peak_radius", s.peaky.false_peak_radius},
      {"false_strength_min", s.peaky.false_strength_min},
      {"false_strength_max", s.peaky.false_strength_max},
  };
  j["dense"] = {
      {"dilation", s.dense.dilation},
      {"plateau_level", s.dense.plateau_level},
      {"false_region_count", s.dense.false_region_count},
      {"false_region_radius", s.dense.false_region_radius},
      {"false_strength_min", s.dense.false_strength_min},
      {"false_strength_max", s.dense.false_strength_max},
  };
  return j;
}

void ReadCorpusSpec(const Json& json, synth::CorpusSpec* s) {
  ObjectReader r(json, "synth");
  r.Get("height", &s->height);
  r.Get("width", &s->width);
  r.Get("num_images", &s->num_images);
  r.Get("num_classes", &s->num_classes);
  r.Get("classes_min", &s->classes_min);
  r.Get("classes_max", &s->classes_max);
  r.Get("coverage_min", &s->coverage_min);
  r.Get("coverage_max", &s->coverage_max);
  r.Get("seed", &s->seed);
  std::string name;
  try {
    r.Get("shapes", &name);
    if (!name.empty()) s->shapes = synth::ParseShapeFamily(name);
    name.clear();
    r.Get("false_overlap", &name);
    if (!name.empty()) s->false_overlap = synth::ParseFalseOverlap(name);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kConfigError) throw;
    throw Error(ErrorCode::kConfigError, std::string("synth: ") + e.what());
  }
  if (const Json* p = r.Child("peaky")) {
    ObjectReader pr(*p, "synth.peaky");
    pr.Get("bump_count", &s->peaky.bump_count);
    pr.Get("bump_radius", &s->peaky.bump_radius);
    pr.Get("sharpness", &s->peaky.sharpness);
    pr.Get("false_peak_count", &s->peaky.false_peak_count);
    pr.Get("false_peak_radius", &s->peaky.false_peak_radius);
    pr.Get("false_strength_min", &s->peaky.false_strength_min);
    pr.Get("false_strength_max", &s->peaky.false_strength_max);
    pr.Finish();
  }
  if (const Json* d = r.Child("dense")) {
    ObjectReader dr(*d, "synth.dense");
    dr.Get("dilation", &s->dense.dilation);
    dr.Get("plateau_level", &s->dense.plateau_level);
    dr.Get("false_region_count", &s->dense.false_region_count);
    dr.Get("false_region_radius", &s->dense.false_region_radius);
    dr.Get("false_strength_min", &s->dense.false_strength_min);
    dr.Get("false_strength_max", &s->dense.false_strength_max);
    dr.Finish();
  }
  r.Finish();
}

Json ToJson(const curriculum::ScaleSchedule& schedule) {
  Json entries = Json::array();
  for (const auto& e : schedule.entries) {
    entries.push_back({{"first_epoch", e.first_epoch},
                       {"last_epoch", e.last_epoch},
                       {"factor", e.factor}});
  }
  return entries;
}

namespace {

Json OptionalArray(const std::vector<std::optional<double>>& v) {
  Json a = Json::array();
  for (const auto& x : v) {
    if (x) {
      a.push_back(*x);
    } else {
      a.push_back(nullptr);
    }
  }
  return a;
}

}  // namespace

Json ToJson(const MetricReport& r) {
  Json j;
  j["miou"] = r.miou;
  j["mean_precision"] = r.mean_precision;
  j["mean_recall"] = r.mean_recall;
  j["pixel_count"] = r.pixel_count;
  j["per_class_iou"] = OptionalArray(r.per_class_iou);
  j["per_class_precision"] = OptionalArray(r.per_class_precision);
  j["per_class_recall"] = OptionalArray(r.per_class_recall);
  return j;
}

}  // namespace camforge::pipeline
