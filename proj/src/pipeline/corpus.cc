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
#include "camforge/pipeline/corpus.h"

#include "camforge/error.h"
#include "camforge/io/npy.h"
#include "camforge/io/png.h"
#include "camforge/pipeline/json_codec.h"

namespace camforge::pipeline {
namespace fs = std::filesystem;

namespace {

void MakeDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) {
    throw Error(ErrorCode::kIoError,
                "cannot create " + dir.string() + ": " + ec.message());
  }
}

}  // namespace

CorpusIndex WriteCorpus(const fs::path& dir, const synth::CorpusSpec& spec) {
  spec.Validate();
  for (const char* sub : {"gt", "images", "cams_a", "cams_b"}) {
    MakeDir(dir / sub);
  }
  CorpusIndex index{spec.height, spec.width, spec.num_classes, {}};
  Json images = Json::array();
  for (int i = 0; i < spec.num_images; ++i) {
    const synth::SynthSample s = synth::GenSample(spec, i);
    io::WriteMaskPng(dir / "gt" / (s.image_id + ".png"), s.gt);
    io::WriteRgbPng(dir / "images" / (s.image_id + ".png"),
                    synth::RenderImage(s.gt, s.seed));
    io::WriteCamStack(dir / "cams_a", s.cams_a);
    io::WriteCamStack(dir / "cams_b", s.cams_b);
    CorpusEntry e{s.image_id, s.cams_a.class_ids()};
    images.push_back({{"id", e.id}, {"classes", e.classes}});
    index.images.push_back(std::move(e));
  }
  Json manifest;
  manifest["schema"] = kCorpusSchema;
  manifest["version"] = kCorpusVersion;
  manifest["height"] = spec.height;
  manifest["width"] = spec.width;
  manifest["num_classes"] = spec.num_classes;
  manifest["spec"] = ToJson(spec);
  manifest["images"] = std::move(images);
  io::WriteFileBytes(dir / "manifest.json", manifest.dump(2) + "\n");
  return index;
}

CorpusIndex ReadManifest(const fs::path& dir) {
  const std::string text = io::ReadFileBytes(dir / "manifest.json");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError,
                (dir / "manifest.json").string() + ": " + e.what());
  }
  ObjectReader r(j, "manifest");
  std::string schema;
  int version = 0;
  r.Get("schema", &schema);
  r.Get("version", &version);
  if (schema != kCorpusSchema || version != kCorpusVersion) {
    throw Error(ErrorCode::kConfigError,
                "manifest: unsupported schema " + schema);
  }
  CorpusIndex index;
  r.Get("height", &index.height);
  r.Get("width", &index.width);
  r.Get("num_classes", &index.num_classes);
  r.Child("spec");
  const Json* images = r.Child("images");
  r.Finish();
  if (index.num_classes < 0 || index.num_classes > kMaxClassId) {
    throw Error(ErrorCode::kConfigError, "manifest: num_classes out of range");
  }
  if (!images || !images->is_array()) {
    throw Error(ErrorCode::kConfigError, "manifest: images must be an array");
  }
  for (const auto& item : *images) {
    ObjectReader ir(item, "manifest.images[]");
    CorpusEntry e;
    ir.Get("id", &e.id);
    ir.Get("classes", &e.classes);
    ir.Finish();
    if (e.id.empty()) {
      throw Error(ErrorCode::kConfigError, "manifest: image without an id");
    }
    for (int k : e.classes) {
      if (k < 1 || k > index.num_classes) {
        throw Error(ErrorCode::kConfigError,
                    "manifest: class " + std::to_string(k) + " of " + e.id +
                        " outside 1.." + std::to_string(index.num_classes));
      }
    }
    index.images.push_back(std::move(e));
  }
  return index;
}

CamStack ReadStack(const fs::path& dir, const CorpusEntry& entry) {
  return io::ReadCamStack(dir, entry.id, entry.classes);
}

void WriteStack(const fs::path& dir, const CamStack& stack) {
  MakeDir(dir);
  io::WriteCamStack(dir, stack);
}

}  // namespace camforge::pipeline
