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
#include "camforge/pipeline/report.h"

#include <cmath>
#include <set>

namespace camforge::pipeline {

std::string_view ToolVersion() { return CAMFORGE_VERSION; }

Json BuildReport(const EvaluationInfo& info, const Json& config,
                 const std::vector<VariantResult>& variants) {
  Json r;
  r["schema"] = kReportSchema;
  r["version"] = kReportVersion;
  r["versions"] = {{"cam_forge", std::string(ToolVersion())}};
  r["mode"] = info.mode;
  r["evaluation"] = {{"images", info.images},
                     {"num_labels", info.num_labels},
                     {"split", info.split},
                     {"bg_threshold", info.bg_threshold}};
  r["config"] = config;
  Json v = Json::object();
  for (const auto& [name, report] : variants) {
    v[name] = report ? ToJson(*report) : Json(nullptr);
  }
  r["variants"] = std::move(v);
  r["timing_file"] = kTimingFileName;
  return r;
}

namespace {

bool NonNegativeInteger(const Json& j) {
  return j.is_number_unsigned() ||
         (j.is_number_integer() && j.get<long long>() >= 0);
}

class Checker {
 public:
  explicit Checker(std::vector<std::string>* problems) : problems_(problems) {}

  void Problem(const std::string& where, const std::string& what) {
    problems_->push_back(where + ": " + what);
  }

  const Json* Field(const Json& obj, const std::string& where,
                    const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      Problem(where, std::string("missing \"") + key + "\"");
      return nullptr;
    }
    return &*it;
  }

  void Percent(const Json& j, const std::string& where) {
    if (!j.is_number()) {
      Problem(where, "expected a number");
      return;
    }
    const double v = j.get<double>();
    if (!std::isfinite(v) || v < 0.0 || v > 100.0) {
      Problem(where, "expected a percentage in [0, 100]");
    }
  }

  void Metric(const Json& m, const std::string& where, int num_labels) {
    if (!m.is_object()) {
      Problem(where, "expected an object or null");
      return;
    }
    static const std::set<std::string> kKeys = {
        "miou", "mean_precision", "mean_recall", "pixel_count",
        "per_class_iou", "per_class_precision", "per_class_recall"};
    for (const auto& [key, _] : m.items()) {
      if (!kKeys.count(key)) Problem(where, "unknown key \"" + key + "\"");
    }
    for (const char* key : {"miou", "mean_precision", "mean_recall"}) {
      if (const Json* j = Field(m, where, key)) Percent(*j, where + "." + key);
    }
    if (const Json* j = Field(m, where, "pixel_count")) {
      if (!NonNegativeInteger(*j)) {
        Problem(where + ".pixel_count", "expected a non-negative integer");
      }
    }
    for (const char* key :
         {"per_class_iou", "per_class_precision", "per_class_recall"}) {
      const Json* arr = Field(m, where, key);
      if (!arr) continue;
      const std::string at = where + "." + key;
      if (!arr->is_array()) {
        Problem(at, "expected an array");
        continue;
      }
      if (num_labels >= 0 && arr->size() != static_cast<size_t>(num_labels)) {
        Problem(at, "length differs from evaluation.num_labels");
      }
      for (std::size_t i = 0; i < arr->size(); ++i) {
        if (!(*arr)[i].is_null()) {
          Percent((*arr)[i], at + "[" + std::to_string(i) + "]");
        }
      }
    }
  }

 private:
  std::vector<std::string>* problems_;
};

}  // namespace

std::vector<std::string> ValidateReport(const Json& report) {
  std::vector<std::string> problems;
  Checker c(&problems);
  if (!report.is_object()) {
    c.Problem("report", "expected an object");
    return problems;
  }
  static const std::set<std::string> kKeys = {
      "schema", "version", "versions", "mode", "evaluation",
      "config", "variants", "timing_file"};
  for (const auto& [key, _] : report.items()) {
    if (!kKeys.count(key)) c.Problem("report", "unknown key \"" + key + "\"");
  }
  if (const Json* j = c.Field(report, "report", "schema")) {
    if (*j != kReportSchema) c.Problem("schema", "unexpected value");
  }
  if (const Json* j = c.Field(report, "report", "version")) {
    if (*j != kReportVersion) c.Problem("version", "unsupported version");
  }
  if (const Json* j = c.Field(report, "report", "versions")) {
    if (!j->is_object() || !j->contains("cam_forge") ||
        !(*j)["cam_forge"].is_string()) {
      c.Problem("versions", "expected {\"cam_forge\": string}");
    }
  }
  std::string mode;
  if (const Json* j = c.Field(report, "report", "mode")) {
    if (j->is_string()) mode = j->get<std::string>();
    if (mode != "pipeline" && mode != "masks") {
      c.Problem("mode", "expected \"pipeline\" or \"masks\"");
    }
  }
  int num_labels = -1;
  if (const Json* e = c.Field(report, "report", "evaluation")) {
    if (!e->is_object()) {
      c.Problem("evaluation", "expected an object");
    } else {
      for (const char* key : {"images", "num_labels"}) {
        const Json* j = c.Field(*e, "evaluation", key);
        if (j && !NonNegativeInteger(*j)) {
          c.Problem(std::string("evaluation.") + key,
                    "expected a non-negative integer");
        }
      }
      if (e->contains("num_labels") && NonNegativeInteger((*e)["num_labels"])) {
        num_labels = (*e)["num_labels"].get<int>();
      }
      const Json* split = c.Field(*e, "evaluation", "split");
      if (split && !split->is_string()) {
        c.Problem("evaluation.split", "expected a string");
      }
      const Json* bg = c.Field(*e, "evaluation", "bg_threshold");
      if (bg && !(bg->is_number() && std::isfinite(bg->get<double>()))) {
        c.Problem("evaluation.bg_threshold", "expected a finite number");
      }
    }
  }
  if (const Json* j = c.Field(report, "report", "config")) {
    if (!j->is_object()) c.Problem("config", "expected an object");
  }
  if (const Json* j = c.Field(report, "report", "timing_file")) {
    if (!j->is_string()) c.Problem("timing_file", "expected a string");
  }
  const Json* variants = c.Field(report, "report", "variants");
  if (variants && !variants->is_object()) {
    c.Problem("variants", "expected an object");
  } else if (variants) {
    std::set<std::string> expected;
    if (mode == "pipeline") {
      expected.insert(std::begin(kPipelineVariants),
                      std::end(kPipelineVariants));
    } else if (mode == "masks") {
      expected.insert("pred");
    }
    for (const auto& name : expected) {
      if (!variants->contains(name)) {
        c.Problem("variants", "missing \"" + name + "\"");
      }
    }
    for (const auto& [name, value] : variants->items()) {
      if (!expected.empty() && !expected.count(name)) {
        c.Problem("variants", "unexpected variant \"" + name + "\"");
      }
      if (!value.is_null()) c.Metric(value, "variants." + name, num_labels);
    }
    if (mode == "masks" && variants->contains("pred") &&
        (*variants)["pred"].is_null()) {
      c.Problem("variants.pred", "must not be null");
    }
  }
  return problems;
}

}  // namespace camforge::pipeline
