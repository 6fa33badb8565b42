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
#ifndef CAMFORGE_PIPELINE_JSON_CODEC_H_
#define CAMFORGE_PIPELINE_JSON_CODEC_H_

#include <set>
#include <string>

#include "json.hpp"

#include "camforge/curriculum.h"
#include "camforge/metrics.h"
#include "camforge/orand/network.h"
#include "camforge/orand/train.h"
#include "camforge/synthgen.h"

namespace camforge::pipeline {

using Json = nlohmann::ordered_json;

// Strict reader over one JSON object. Every getter leaves *out untouched
// when the key is absent and throws ConfigError on a type mismatch;
// Finish() throws on keys nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& json, std::string where);

  void Get(const char* key, bool* out);
  void Get(const char* key, int* out);
  void Get(const char* key, long* out);
  void Get(const char* key, std::uint64_t* out);
  void Get(const char* key, double* out);
  void Get(const char* key, std::string* out);
  void Get(const char* key, std::vector<int>* out);
  // nullptr when absent.
  const Json* Child(const char* key);
  void Finish() const;

  const std::string& where() const { return where_; }

 private:
  const Json* Find(const char* key);
  [[noreturn]] void Fail(const char* key, const char* want) const;

  const Json& json_;
  std::string where_;
  std::set<std::string> seen_;
};

Json ToJson(const orand::FcnArchitecture& arch);
orand::FcnArchitecture ArchitectureFromJson(const Json& json);

Json ToJson(const orand::TrainConfig& config);
// Overlays fields present in json onto *config.
void ReadTrainConfig(ObjectReader& reader, orand::TrainConfig* config);

Json ToJson(const synth::CorpusSpec& spec);
void ReadCorpusSpec(const Json& json, synth::CorpusSpec* spec);

Json ToJson(const curriculum::ScaleSchedule& schedule);

Json ToJson(const MetricReport& report);

}  // namespace camforge::pipeline

#endif  // CAMFORGE_PIPELINE_JSON_CODEC_H_
