// Copyright 2026 The SkillScope Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "skillscope/eval.hpp"

#include <nlohmann/json.hpp>

#include "skillscope/errors.hpp"

namespace skillscope {

using nlohmann::json;

const char* gt_class_name(GtClass cls) {
  switch (cls) {
    case GtClass::Inconsistent: return "Inconsistent";
    case GtClass::CoarserDescription: return "CoarserDescription";
    case GtClass::Consistent: return "Consistent";
  }
  return "?";
}

std::optional<GtClass> gt_class_from_name(const std::string& name) {
  if (name == "Inconsistent") return GtClass::Inconsistent;
  if (name == "CoarserDescription") return GtClass::CoarserDescription;
  if (name == "Consistent") return GtClass::Consistent;
  return std::nullopt;
}

Metrics metrics_from_counts(int tp, int fp, int fn) {
  Metrics m;
  m.tp = tp;
  m.fp = fp;
  m.fn = fn;
  m.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 1.0;
  m.recall = tp + fn > 0 ? static_cast<double>(tp) / (tp + fn) : 1.0;
  m.f1 = m.precision + m.recall > 0.0
             ? 2.0 * m.precision * m.recall / (m.precision + m.recall)
             : 0.0;
  return m;
}

int ConfusionMatrix::total() const {
  int sum = 0;
  for (const auto& row : cells) {
    for (int cell : row) sum += cell;
  }
  return sum;
}

namespace {

int class_index(GtClass cls) {
  switch (cls) {
    case GtClass::Inconsistent: return 0;
    case GtClass::CoarserDescription: return 1;
    case GtClass::Consistent: return 2;
  }
  return 2;
}

// Uncertain is a conservative non-flag (it can contribute FN, never FP).
int verdict_index(VerdictClass cls) {
  switch (cls) {
    case VerdictClass::Inconsistent: return 0;
    case VerdictClass::CoarserDescription: return 1;
    case VerdictClass::Consistent: return 2;
    case VerdictClass::Uncertain: return 2;
  }
  return 2;
}

}  // namespace

EvalResult compute_metrics(const std::map<std::string, VerdictClass>& predictions,
                           const std::vector<GroundTruthLabel>& labels) {
  std::map<std::string, GtClass> by_id;
  for (const GroundTruthLabel& label : labels) {
    by_id[label.skill_id] = label.cls;
  }
  for (const auto& [id, verdict] : predictions) {
    (void)verdict;
    if (!by_id.count(id)) {
      throw ScopeError(Errc::LabelMismatch, "prediction '" + id + "' has no ground truth");
    }
  }
  for (const auto& [id, cls] : by_id) {
    (void)cls;
    if (!predictions.count(id)) {
      throw ScopeError(Errc::LabelMismatch, "labeled skill '" + id + "' has no prediction");
    }
  }

  EvalResult result;
  int tp = 0, fp = 0, fn = 0;
  for (const auto& [id, verdict] : predictions) {
    GtClass truth = by_id.at(id);
    bool flagged = verdict == VerdictClass::Inconsistent;
    bool labeled = truth == GtClass::Inconsistent;
    if (flagged && labeled) ++tp;
    if (flagged && !labeled) ++fp;
    if (!flagged && labeled) ++fn;
    result.confusion.cells[static_cast<std::size_t>(verdict_index(verdict))]
                          [static_cast<std::size_t>(class_index(truth))] += 1;
  }
  result.metrics = metrics_from_counts(tp, fp, fn);
  return result;
}

std::string metrics_report_json(const EvalResult& result) {
  json doc;
  doc["tp"] = result.metrics.tp;
  doc["fp"] = result.metrics.fp;
  doc["fn"] = result.metrics.fn;
  doc["precision"] = result.metrics.precision;
  doc["recall"] = result.metrics.recall;
  doc["f1"] = result.metrics.f1;
  doc["confusion"] = json::array();
  for (const auto& row : result.confusion.cells) {
    doc["confusion"].push_back(json::array({row[0], row[1], row[2]}));
  }
  return doc.dump(2);
}

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line =
        text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    start = nl == std::string::npos ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return lines;
}

}  // namespace

std::vector<GroundTruthLabel> read_ground_truth(const std::string& text) {
  std::vector<GroundTruthLabel> labels;
  for (const std::string& line : lines_of(text)) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw ScopeError(Errc::SchemaError, "malformed ground-truth line: " + line);
    }
    GroundTruthLabel label;
    label.skill_id = record.value("skill_id", "");
    auto cls = gt_class_from_name(record.value("class", ""));
    if (label.skill_id.empty() || !cls) {
      throw ScopeError(Errc::SchemaError, "ground-truth line needs skill_id and class");
    }
    label.cls = *cls;
    if (record.contains("pattern") && record["pattern"].is_string()) {
      label.pattern = record["pattern"].get<std::string>();
      const std::string& p = *label.pattern;
      bool ic = p.rfind("IC", 0) == 0;
      bool lu = p.rfind("LU", 0) == 0;
      if ((ic && label.cls != GtClass::Inconsistent) ||
          (lu && label.cls != GtClass::CoarserDescription) || (!ic && !lu)) {
        throw ScopeError(Errc::SchemaError,
                         "pattern " + p + " does not match class " + gt_class_name(label.cls));
      }
    }
    labels.push_back(std::move(label));
  }
  return labels;
}

std::string ground_truth_lines(const std::vector<GroundTruthLabel>& labels) {
  std::string out;
  for (const GroundTruthLabel& label : labels) {
    json record;
    record["class"] = gt_class_name(label.cls);
    if (label.pattern) record["pattern"] = *label.pattern;
    record["skill_id"] = label.skill_id;
    out += record.dump();
    out += '\n';
  }
  return out;
}

std::map<std::string, VerdictClass> read_predictions(const std::string& text) {
  std::map<std::string, VerdictClass> predictions;
  for (const std::string& line : lines_of(text)) {
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
      throw ScopeError(Errc::SchemaError, "malformed prediction line: " + line);
    }
    auto cls = verdict_from_name(record.value("class", ""));
    std::string id = record.value("skill_id", "");
    if (id.empty() || !cls) {
      throw ScopeError(Errc::SchemaError, "prediction line needs skill_id and class");
    }
    predictions[id] = *cls;
  }
  return predictions;
}

std::string prediction_lines(const std::map<std::string, VerdictClass>& predictions) {
  std::string out;
  for (const auto& [id, cls] : predictions) {
    json record;
    record["class"] = verdict_name(cls);
    record["skill_id"] = id;
    out += record.dump();
    out += '\n';
  }
  return out;
}

}  // namespace skillscope
