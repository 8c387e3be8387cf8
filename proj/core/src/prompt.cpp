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

#include "skillscope/prompt.hpp"

#include "prompt_template.hpp"
#include "skillscope/spg.hpp"

namespace skillscope {

const char* prompt_template_version() { return detail::kPromptTemplateVersion; }

std::string render_taxonomy_block(const Taxonomy& taxonomy) {
  std::string block;
  for (const Category& category : taxonomy.categories()) {
    block += "- ";
    block += category_name(category.id);
    block += '\n';
    for (const SecondLevelLabel& label : category.labels) {
      block += "  - ";
      block += label.code;
      block += ": ";
      block += label.operational_description;
      block += '\n';
    }
  }
  if (!block.empty() && block.back() == '\n') block.pop_back();
  return block;
}

namespace {

void replace_once(std::string* text, const std::string& placeholder,
                  const std::string& value) {
  std::size_t at = text->find(placeholder);
  if (at == std::string::npos) return;
  text->replace(at, placeholder.size(), value);
}

}  // namespace

std::string render_prompt(const Taxonomy& taxonomy, const std::string& skill_md_raw,
                          const std::string& graph_json) {
  deserialize_spg(graph_json);  // schema gate

  std::string prompt = detail::kPromptTemplate;
  replace_once(&prompt, "{{TAXONOMY}}", render_taxonomy_block(taxonomy));
  replace_once(&prompt, "{{SKILL_MD}}", skill_md_raw);
  replace_once(&prompt, "{{CODE_GRAPH_JSON}}", graph_json);
  return prompt;
}

}  // namespace skillscope
