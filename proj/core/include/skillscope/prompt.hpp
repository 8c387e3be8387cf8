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

#include <string>

#include "skillscope/taxonomy.hpp"

namespace skillscope {

/// Version tag of the prompt text asset the template was built from.
const char* prompt_template_version();

/// Deterministic instantiation of the audit prompt: taxonomy block, the
/// raw SKILL.md, and the serialized graph document, in template order.
/// Validates `graph_json` first and throws ScopeError(SchemaError) when it
/// is malformed. Byte-stable for fixed inputs.
std::string render_prompt(const Taxonomy& taxonomy, const std::string& skill_md_raw,
                          const std::string& graph_json);

/// The taxonomy block used inside the prompt (one header per category,
/// one line per second-level label).
std::string render_taxonomy_block(const Taxonomy& taxonomy);

}  // namespace skillscope
