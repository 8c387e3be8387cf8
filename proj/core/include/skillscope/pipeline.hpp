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

#include <optional>

#include "skillscope/checker.hpp"
#include "skillscope/spg.hpp"

namespace skillscope {

struct PipelineOptions {
  BuildOptions build;
};

struct SkillResult {
  std::string id;
  std::optional<Spg> spg;  // absent when every file was skipped
  ClassifyResult check;
};

/// Graph construction with the AllFilesSkipped case folded into an absent
/// graph (callers map it to an Uncertain verdict).
std::optional<Spg> scan_skill(const Skill& skill, const Taxonomy& taxonomy,
                              const PipelineOptions& options = {});

/// Full rule-engine pipeline for one skill: build the SPG and classify it
/// against the description. Skills with no analyzable supported file come
/// back Uncertain with evidence_validation = graph_extraction_uncertain.
SkillResult run_rule_engine(const Skill& skill, const Taxonomy& taxonomy,
                            const std::vector<LexiconEntry>& lexicon,
                            const PipelineOptions& options = {});

}  // namespace skillscope
