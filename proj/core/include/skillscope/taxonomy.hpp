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
#include <string>
#include <vector>

#include "skillscope/skill.hpp"

namespace skillscope {

/// The eleven first-level security behavior categories.
enum class CategoryId {
  FileRead,
  FileWrite,
  SystemCommand,
  NetworkAccess,
  ExternalApi,
  SecretAccess,
  DependencyModification,
  SystemPermissionAccess,
  SecurityControl,
  Observability,
  Infrastructure,
};

inline constexpr int kCategoryCount = 11;
inline constexpr int kLabelCount = 32;

const char* category_name(CategoryId id);
std::optional<CategoryId> category_from_name(const std::string& name);

/// Canonical code prefix of a category (e.g. SECRET_ACCESS -> "SA").
const char* category_code_prefix(CategoryId id);

struct SecondLevelLabel {
  std::string code;                   // e.g. "SA-KEY"
  CategoryId category;
  std::string operational_description;
};

struct Category {
  CategoryId id;
  std::vector<SecondLevelLabel> labels;
};

enum class PatternKind { CallPrefix, MemberChain, AttributeAccess };

const char* pattern_kind_name(PatternKind kind);
std::optional<PatternKind> pattern_kind_from_name(const std::string& name);

/// A code pattern that marks an implementation site as evidence of a
/// category. Pattern grammar, matched against the site's dotted callee or
/// member chain:
///   - call-prefix `open(`: the site is a call with a single-segment callee
///     and the call rendering starts with the full pattern.
///   - member-chain `os.getenv(`: the site is a call and the pattern's
///     segments equal the trailing callee segments exactly.
///   - member-chain `requests.`: the site is a call and the pattern's
///     segments appear consecutively anywhere in the callee chain.
///   - attribute-access `process.env.`: the site is a non-call member access
///     and the pattern's segments appear consecutively in the chain.
/// Segment comparison is exact and case-sensitive. String literal content
/// never participates in chain extraction, so patterns cannot match inside
/// quotes.
struct LocalizationRule {
  std::vector<CategoryId> candidates;  // usually one; NA|EA rules carry two
  std::optional<std::string> label_hint;
  PatternKind kind = PatternKind::MemberChain;
  std::string pattern;
  std::vector<Language> languages;

  CategoryId primary_category() const { return candidates.front(); }
  bool applies_to(Language lang) const;
};

struct RuleMatch {
  const LocalizationRule* rule = nullptr;
  std::size_t span_begin = 0;  // byte offsets into the site text
  std::size_t span_end = 0;
  std::string matched_text;
};

class Taxonomy {
 public:
  const std::vector<Category>& categories() const { return categories_; }
  const std::vector<LocalizationRule>& rules() const { return rules_; }

  const Category& category(CategoryId id) const;
  const SecondLevelLabel* find_label(const std::string& code) const;
  bool has_label(const std::string& code) const { return find_label(code) != nullptr; }

  /// Throws ScopeError(TaxonomyInvalid) naming the violated invariant:
  /// exactly 11 categories, 32 unique labels with prefix-consistent codes,
  /// and at least one rule per category.
  void validate() const;

  std::vector<Category> categories_;
  std::vector<LocalizationRule> rules_;
};

/// The built-in two-level taxonomy and its curated localization rules.
const Taxonomy& default_taxonomy();

/// Returns the built-in taxonomy when `config_json` is empty; otherwise
/// parses `{categories: [...], rules: [...]}` and validates it.
Taxonomy load_taxonomy(const std::string& config_json = "");

/// All rules whose pattern matches the site, per the pattern-kind semantics
/// above. `site` is a single expression or statement rendering; only the
/// leading chain is considered, nested argument content never matches. Rules
/// from every candidate category are returned; callers deduplicate per
/// category. The result is independent of rule order in the taxonomy.
std::vector<RuleMatch> match_rules(const std::string& site, Language language,
                                   const Taxonomy& taxonomy);

/// Resolves an ambiguous NETWORK_ACCESS/EXTERNAL_API candidate set:
/// endpoint literals resembling API paths (`/api/` or `/v1/`) pick
/// EXTERNAL_API, everything else NETWORK_ACCESS.
CategoryId resolve_candidates(const std::vector<CategoryId>& candidates,
                              const std::string& rendering);

/// Best-effort second-level label for a code-side node: the rule's static
/// hint when present, else a refinement from the operation text (secret-like
/// names pick SA-KEY, output-like paths pick FW-OUTPUT, and so on).
std::optional<std::string> refine_label_hint(CategoryId category,
                                             const std::optional<std::string>& rule_hint,
                                             const std::string& rendering);

/// Serializes a taxonomy back to its config document form.
std::string taxonomy_to_json(const Taxonomy& taxonomy);

}  // namespace skillscope
