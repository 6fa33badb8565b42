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
#include "camforge/io/checkpoint.h"

#include <map>

#include "camforge/error.h"
#include "camforge/io/npy.h"
#include "camforge/io/npz.h"
#include "camforge/pipeline/json_codec.h"

namespace camforge::io {
namespace {

using pipeline::Json;

[[noreturn]] void Bad(const std::string& what) {
  throw Error(ErrorCode::kBadArchive, "checkpoint: " + what);
}

std::string WeightName(std::size_t i) {
  return "conv" + std::to_string(i) + "_weight.npy";
}
std::string BiasName(std::size_t i) {
  return "conv" + std::to_string(i) + "_bias.npy";
}

std::vector<double> ReadTensor(const std::map<std::string, std::string>& m,
                               const std::string& name,
                               const std::vector<std::size_t>& shape) {
  auto it = m.find(name);
  if (it == m.end()) Bad("missing member " + name);
  NpyArray a = DecodeNpy(it->second);
  if (a.shape != shape) {
    throw Error(ErrorCode::kShapeMismatch,
                "checkpoint: " + name + " does not match the architecture");
  }
  return std::move(a.values);
}

}  // namespace

std::string EncodeCheckpoint(const Checkpoint& ck) {
  const auto& p = ck.params;
  Json meta;
  meta["schema"] = kCheckpointSchema;
  meta["version"] = kCheckpointVersion;
  meta["architecture"] = pipeline::ToJson(p.architecture);
  meta["seed"] = p.seed;
  meta["init_scheme"] = p.init_scheme;
  meta["train_config"] = pipeline::ToJson(ck.config);

  std::vector<ArchiveMember> members;
  members.emplace_back("meta.json", meta.dump(2) + "\n");
  for (std::size_t i = 0; i < p.convs.size(); ++i) {
    const auto& c = p.convs[i];
    NpyArray w{NpyDtype::kFloat64,
               {static_cast<std::size_t>(c.out_channels),
                static_cast<std::size_t>(c.in_channels),
                static_cast<std::size_t>(c.kernel),
                static_cast<std::size_t>(c.kernel)},
               c.weight};
    NpyArray b{NpyDtype::kFloat64,
               {static_cast<std::size_t>(c.out_channels)},
               c.bias};
    members.emplace_back(WeightName(i), EncodeNpy(w));
    members.emplace_back(BiasName(i), EncodeNpy(b));
  }
  return EncodeNpz(members);
}

Checkpoint DecodeCheckpoint(const std::string& bytes) {
  std::map<std::string, std::string> m;
  for (auto& [name, data] : DecodeNpz(bytes)) m[name] = std::move(data);
  auto meta_it = m.find("meta.json");
  if (meta_it == m.end()) Bad("missing meta.json");
  Json meta;
  try {
    meta = Json::parse(meta_it->second);
  } catch (const nlohmann::json::exception& e) {
    Bad(std::string("meta.json: ") + e.what());
  }

  Checkpoint ck;
  try {
    pipeline::ObjectReader r(meta, "meta.json");
    std::string schema;
    int version = 0;
    r.Get("schema", &schema);
    r.Get("version", &version);
    if (schema != kCheckpointSchema || version != kCheckpointVersion) {
      Bad("unsupported schema " + schema + " v" + std::to_string(version));
    }
    const Json* arch = r.Child("architecture");
    if (!arch) Bad("meta.json lacks an architecture");
    ck.params.architecture = pipeline::ArchitectureFromJson(*arch);
    r.Get("seed", &ck.params.seed);
    r.Get("init_scheme", &ck.params.init_scheme);
    if (const Json* tc = r.Child("train_config")) {
      pipeline::ObjectReader tr(*tc, "meta.json.train_config");
      pipeline::ReadTrainConfig(tr, &ck.config);
      tr.Finish();
    }
    r.Finish();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kBadArchive) throw;
    Bad(e.what());
  }

  std::size_t i = 0;
  for (const auto& l : ck.params.architecture.layers) {
    if (l.kind != orand::LayerKind::kConv) continue;
    orand::ConvTensors c(l.in_channels, l.out_channels, l.kernel);
    const auto out = static_cast<std::size_t>(l.out_channels);
    const auto in = static_cast<std::size_t>(l.in_channels);
    const auto k = static_cast<std::size_t>(l.kernel);
    c.weight = ReadTensor(m, WeightName(i), {out, in, k, k});
    c.bias = ReadTensor(m, BiasName(i), {out});
    ck.params.convs.push_back(std::move(c));
    ++i;
  }
  if (m.size() != 1 + 2 * i) Bad("unexpected extra members");
  return ck;
}

void SaveCheckpoint(const std::filesystem::path& path, const Checkpoint& ck) {
  WriteFileBytes(path, EncodeCheckpoint(ck));
}

Checkpoint LoadCheckpoint(const std::filesystem::path& path) {
  return DecodeCheckpoint(ReadFileBytes(path));
}

}  // namespace camforge::io
