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

#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillscope/checker.hpp"

namespace skillscope {

enum class GtClass { Inconsistent, CoarserDescription, Consistent };

const char* gt_class_name(GtClass cls);
std::optional<GtClass> gt_class_from_name(const std::string& name);

struct GroundTruthLabel {
  std::string skill_id;
  GtClass cls = GtClass::Consistent;
  std::optional<std::string> pattern;  // IC1..IC6 / LU1..LU6 when applicable
};

struct Metrics {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

/// Precision/recall/F1 with the zero-denominator convention: a ratio whose
/// denominator is zero defines to 1.0 (no claims, no false claims).
Metrics metrics_from_counts(int tp, int fp, int fn);

/// 3x3 counts indexed [system class][human class] in the order
/// Inconsistent, CoarserDescription, Consistent. Uncertain predictions are
/// conservative non-flags and land in the Consistent row.
struct ConfusionMatrix {
  std::array<std::array<int, 3>, 3> cells{};

  int total() const;
};

struct EvalResult {
  Metrics metrics;
  ConfusionMatrix confusion;
};

/// Skill-level scoring: TP = predicted Inconsistent and labeled
/// Inconsistent; FP = predicted but not labeled; FN = labeled but not
/// predicted. Throws ScopeError(LabelMismatch) when predictions and labels
/// do not cover exactly the same skill ids.
EvalResult compute_metrics(const std::map<std::string, VerdictClass>& predictions,
                           const std::vector<GroundTruthLabel>& labels);

/// `{tp, fp, fn, precision, recall, f1, confusion: [[..]]}` (sorted keys).
std::string metrics_report_json(const EvalResult& result);

/// Line-delimited `{skill_id, class, pattern?}` records.
std::vector<GroundTruthLabel> read_ground_truth(const std::string& text);
std::string ground_truth_lines(const std::vector<GroundTruthLabel>& labels);

/// Line-delimited `{skill_id, class}` prediction records.
std::map<std::string, VerdictClass> read_predictions(const std::string& text);
std::string prediction_lines(const std::map<std::string, VerdictClass>& predictions);

}  // namespace skillscope
