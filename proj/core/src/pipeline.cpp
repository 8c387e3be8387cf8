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

#include "skillscope/pipeline.hpp"

#include "skillscope/errors.hpp"

namespace skillscope {

std::optional<Spg> scan_skill(const Skill& skill, const Taxonomy& taxonomy,
                              const PipelineOptions& options) {
  try {
    return build_skill_spg(skill, taxonomy, options.build);
  } catch (const ScopeError& err) {
    if (err.code() == Errc::AllFilesSkipped) return std::nullopt;
    throw;
  }
}

SkillResult run_rule_engine(const Skill& skill, const Taxonomy& taxonomy,
                            const std::vector<LexiconEntry>& lexicon,
                            const PipelineOptions& options) {
  SkillResult result;
  result.id = skill.id;
  result.spg = scan_skill(skill, taxonomy, options);
  if (!result.spg) {
    result.check = uncertain_result(
        "no supported implementation file could be analyzed", "rule-engine");
    return result;
  }
  result.check = classify(*result.spg, skill.description, taxonomy, lexicon);
  return result;
}

}  // namespace skillscope
