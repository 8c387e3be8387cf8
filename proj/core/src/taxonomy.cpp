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

#include "skillscope/taxonomy.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include <nlohmann/json.hpp>

#include "skillscope/errors.hpp"

namespace skillscope {

using nlohmann::json;

const char* category_name(CategoryId id) {
  switch (id) {
    case CategoryId::FileRead: return "FILE_READ";
    case CategoryId::FileWrite: return "FILE_WRITE";
    case CategoryId::SystemCommand: return "SYSTEM_COMMAND";
    case CategoryId::NetworkAccess: return "NETWORK_ACCESS";
    case CategoryId::ExternalApi: return "EXTERNAL_API";
    case CategoryId::SecretAccess: return "SECRET_ACCESS";
    case CategoryId::DependencyModification: return "DEPENDENCY_MODIFICATION";
    case CategoryId::SystemPermissionAccess: return "SYSTEM_PERMISSION_ACCESS";
    case CategoryId::SecurityControl: return "SECURITY_CONTROL";
    case CategoryId::Observability: return "OBSERVABILITY";
    case CategoryId::Infrastructure: return "INFRASTRUCTURE";
  }
  return "?";
}

std::optional<CategoryId> category_from_name(const std::string& name) {
  static const std::vector<CategoryId> all = {
      CategoryId::FileRead,        CategoryId::FileWrite,
      CategoryId::SystemCommand,   CategoryId::NetworkAccess,
      CategoryId::ExternalApi,     CategoryId::SecretAccess,
      CategoryId::DependencyModification, CategoryId::SystemPermissionAccess,
      CategoryId::SecurityControl, CategoryId::Observability,
      CategoryId::Infrastructure};
  for (CategoryId id : all) {
    if (name == category_name(id)) return id;
  }
  return std::nullopt;
}

const char* category_code_prefix(CategoryId id) {
  switch (id) {
    case CategoryId::FileRead: return "FR";
    case CategoryId::FileWrite: return "FW";
    case CategoryId::SystemCommand: return "SC";
    case CategoryId::NetworkAccess: return "NA";
    case CategoryId::ExternalApi: return "EA";
    case CategoryId::SecretAccess: return "SA";
    case CategoryId::DependencyModification: return "DM";
    case CategoryId::SystemPermissionAccess: return "SPA";
    case CategoryId::SecurityControl: return "SEC";
    case CategoryId::Observability: return "OBS";
    case CategoryId::Infrastructure: return "INF";
  }
  return "?";
}

const char* pattern_kind_name(PatternKind kind) {
  switch (kind) {
    case PatternKind::CallPrefix: return "call-prefix";
    case PatternKind::MemberChain: return "member-chain";
    case PatternKind::AttributeAccess: return "attribute-access";
  }
  return "?";
}

std::optional<PatternKind> pattern_kind_from_name(const std::string& name) {
  if (name == "call-prefix") return PatternKind::CallPrefix;
  if (name == "member-chain") return PatternKind::MemberChain;
  if (name == "attribute-access") return PatternKind::AttributeAccess;
  return std::nullopt;
}

bool LocalizationRule::applies_to(Language lang) const {
  return std::find(languages.begin(), languages.end(), lang) != languages.end();
}

const Category& Taxonomy::category(CategoryId id) const {
  for (const Category& cat : categories_) {
    if (cat.id == id) return cat;
  }
  throw ScopeError(Errc::TaxonomyInvalid,
                   std::string("category missing: ") + category_name(id));
}

const SecondLevelLabel* Taxonomy::find_label(const std::string& code) const {
  for (const Category& cat : categories_) {
    for (const SecondLevelLabel& label : cat.labels) {
      if (label.code == code) return &label;
    }
  }
  return nullptr;
}

void Taxonomy::validate() const {
  if (categories_.size() != kCategoryCount) {
    throw ScopeError(Errc::TaxonomyInvalid,
                     "category count " + std::to_string(categories_.size()) +
                         ", expected " + std::to_string(kCategoryCount));
  }
  std::set<CategoryId> seen_categories;
  std::set<std::string> seen_codes;
  std::size_t label_total = 0;
  for (const Category& cat : categories_) {
    if (!seen_categories.insert(cat.id).second) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       std::string("duplicate category ") + category_name(cat.id));
    }
    const std::string prefix = std::string(category_code_prefix(cat.id)) + "-";
    for (const SecondLevelLabel& label : cat.labels) {
      if (!seen_codes.insert(label.code).second) {
        throw ScopeError(Errc::TaxonomyInvalid, "duplicate label code " + label.code);
      }
      if (label.code.rfind(prefix, 0) != 0) {
        throw ScopeError(Errc::TaxonomyInvalid,
                         "label " + label.code + " does not carry prefix " + prefix);
      }
      ++label_total;
    }
  }
  if (label_total != kLabelCount) {
    throw ScopeError(Errc::TaxonomyInvalid,
                     "second-level label count " + std::to_string(label_total) +
                         ", expected " + std::to_string(kLabelCount));
  }

  std::set<CategoryId> covered;
  for (const LocalizationRule& rule : rules_) {
    if (rule.pattern.empty()) {
      throw ScopeError(Errc::TaxonomyInvalid, "rule with empty pattern");
    }
    if (rule.candidates.empty()) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       "rule " + rule.pattern + " names no category");
    }
    for (CategoryId id : rule.candidates) {
      if (!seen_categories.count(id)) {
        throw ScopeError(Errc::TaxonomyInvalid,
                         "rule " + rule.pattern + " names unknown category");
      }
      covered.insert(id);
    }
    if (rule.label_hint && !find_label(*rule.label_hint)) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       "rule " + rule.pattern + " hints unknown label " + *rule.label_hint);
    }
  }
  for (const Category& cat : categories_) {
    if (!covered.count(cat.id)) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       std::string("no localization rule for ") + category_name(cat.id));
    }
  }
}

// --- Site chain extraction -------------------------------------------------
//
// match_rules sees a single rendering like `os.getenv('API_KEY')` or
// `process.env.API_KEY`. Only the leading dotted chain is extracted;
// argument text and string literals are skipped for balance only.

namespace {

struct ChainSegment {
  std::string identifier;
  std::size_t begin = 0;  // offset of the identifier in the site text
  std::size_t end = 0;
  bool has_call = false;
};

struct SiteChain {
  bool valid = false;
  bool is_call = false;  // final segment is invoked
  std::vector<ChainSegment> segments;
};

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

std::size_t skip_spaces(const std::string& s, std::size_t i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
  return i;
}

// Returns the position after the matching closer, skipping quoted strings.
std::size_t skip_balanced(const std::string& s, std::size_t i) {
  char open = s[i];
  char close = open == '(' ? ')' : open == '[' ? ']' : '}';
  int depth = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == '\'' || c == '"' || c == '`') {
      char quote = c;
      ++i;
      while (i < s.size() && s[i] != quote) {
        if (s[i] == '\\') ++i;
        ++i;
      }
      if (i < s.size()) ++i;
      continue;
    }
    if (c == open || c == '(' || c == '[' || c == '{') ++depth;
    if (c == close || c == ')' || c == ']' || c == '}') {
      --depth;
      if (depth == 0) return i + 1;
    }
    ++i;
  }
  return i;
}

SiteChain extract_chain(const std::string& site) {
  SiteChain chain;
  std::size_t i = skip_spaces(site, 0);

  // Leading keywords that do not change the callee.
  for (const char* kw : {"new ", "await ", "yield "}) {
    std::size_t len = std::string(kw).size();
    if (site.compare(i, len, kw) == 0) i = skip_spaces(site, i + len);
  }

  if (i >= site.size() || !ident_start(site[i])) return chain;  // literals too

  while (i < site.size() && ident_start(site[i])) {
    ChainSegment segment;
    segment.begin = i;
    while (i < site.size() && ident_char(site[i])) ++i;
    segment.end = i;
    segment.identifier = site.substr(segment.begin, segment.end - segment.begin);

    // Calls and subscripts attach to the current segment.
    while (i < site.size() && (site[i] == '(' || site[i] == '[')) {
      if (site[i] == '(') segment.has_call = true;
      i = skip_balanced(site, i);
    }
    chain.segments.push_back(segment);

    std::size_t after = skip_spaces(site, i);
    if (after < site.size() && site[after] == '.') {
      i = skip_spaces(site, after + 1);
      // Optional chaining renders as `?.`; the '?' was consumed upstream.
      if (i >= site.size() || !ident_start(site[i])) break;
      continue;
    }
    break;
  }

  if (chain.segments.empty()) return chain;
  chain.valid = true;
  chain.is_call = chain.segments.back().has_call;
  return chain;
}

std::vector<std::string> pattern_segments(const std::string& pattern, bool* call_suffix,
                                          bool* dot_suffix) {
  std::string body = pattern;
  *call_suffix = false;
  *dot_suffix = false;
  if (!body.empty() && body.back() == '(') {
    *call_suffix = true;
    body.pop_back();
  } else if (!body.empty() && body.back() == '.') {
    *dot_suffix = true;
    body.pop_back();
  }
  std::vector<std::string> segments;
  std::string cur;
  for (char c : body) {
    if (c == '.') {
      if (!cur.empty()) segments.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) segments.push_back(cur);
  return segments;
}

// Finds `want` as consecutive identifiers in `have`; returns index or npos.
std::size_t find_consecutive(const std::vector<ChainSegment>& have,
                             const std::vector<std::string>& want) {
  if (want.empty() || want.size() > have.size()) return std::string::npos;
  for (std::size_t start = 0; start + want.size() <= have.size(); ++start) {
    bool all = true;
    for (std::size_t k = 0; k < want.size(); ++k) {
      if (have[start + k].identifier != want[k]) { all = false; break; }
    }
    if (all) return start;
  }
  return std::string::npos;
}

}  // namespace

std::vector<RuleMatch> match_rules(const std::string& site, Language language,
                                   const Taxonomy& taxonomy) {
  std::vector<RuleMatch> matches;
  SiteChain chain = extract_chain(site);
  if (!chain.valid) return matches;

  for (const LocalizationRule& rule : taxonomy.rules()) {
    if (!rule.applies_to(language)) continue;

    bool call_suffix = false, dot_suffix = false;
    std::vector<std::string> want = pattern_segments(rule.pattern, &call_suffix, &dot_suffix);
    if (want.empty()) continue;

    std::size_t at = std::string::npos;
    switch (rule.kind) {
      case PatternKind::CallPrefix: {
        // Single-segment callee invoked directly.
        if (!chain.is_call || chain.segments.size() != 1 || want.size() != 1) break;
        if (chain.segments[0].identifier == want[0]) at = 0;
        break;
      }
      case PatternKind::MemberChain: {
        if (!chain.is_call) break;
        if (call_suffix) {
          // Pattern segments are the trailing callee segments.
          if (want.size() > chain.segments.size()) break;
          std::size_t start = chain.segments.size() - want.size();
          bool all = true;
          for (std::size_t k = 0; k < want.size(); ++k) {
            if (chain.segments[start + k].identifier != want[k]) { all = false; break; }
          }
          if (all) at = start;
        } else {
          at = find_consecutive(chain.segments, want);
        }
        break;
      }
      case PatternKind::AttributeAccess: {
        if (chain.is_call || chain.segments.size() < 2) break;
        at = find_consecutive(chain.segments, want);
        break;
      }
    }

    if (at != std::string::npos) {
      RuleMatch match;
      match.rule = &rule;
      match.span_begin = chain.segments[at].begin;
      match.span_end = chain.segments[at + want.size() - 1].end;
      match.matched_text = site.substr(match.span_begin, match.span_end - match.span_begin);
      matches.push_back(match);
    }
  }
  return matches;
}

CategoryId resolve_candidates(const std::vector<CategoryId>& candidates,
                              const std::string& rendering) {
  if (candidates.size() == 1) return candidates.front();
  const bool network = std::find(candidates.begin(), candidates.end(),
                                 CategoryId::NetworkAccess) != candidates.end();
  const bool api = std::find(candidates.begin(), candidates.end(),
                             CategoryId::ExternalApi) != candidates.end();
  if (network && api) {
    if (rendering.find("/api/") != std::string::npos ||
        rendering.find("/v1/") != std::string::npos) {
      return CategoryId::ExternalApi;
    }
    return CategoryId::NetworkAccess;
  }
  return candidates.front();
}

namespace {

bool contains_ci(const std::string& haystack, const char* needle) {
  std::string lower_hay = haystack;
  std::transform(lower_hay.begin(), lower_hay.end(), lower_hay.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return lower_hay.find(needle) != std::string::npos;
}

}  // namespace

std::optional<std::string> refine_label_hint(CategoryId category,
                                             const std::optional<std::string>& rule_hint,
                                             const std::string& rendering) {
  if (rule_hint) return rule_hint;
  switch (category) {
    case CategoryId::SecretAccess:
      if (contains_ci(rendering, "key") || contains_ci(rendering, "token") ||
          contains_ci(rendering, "secret") || contains_ci(rendering, "passw") ||
          contains_ci(rendering, "credential") || contains_ci(rendering, "auth")) {
        return "SA-KEY";
      }
      if (contains_ci(rendering, "cookie") || contains_ci(rendering, "session")) {
        return "SA-SESSION";
      }
      if (contains_ci(rendering, "email") || contains_ci(rendering, "user")) {
        return "SA-ID";
      }
      return std::nullopt;
    case CategoryId::FileWrite:
      if (contains_ci(rendering, "report") || contains_ci(rendering, "output") ||
          contains_ci(rendering, "result") || contains_ci(rendering, "summary")) {
        return "FW-OUTPUT";
      }
      if (contains_ci(rendering, "cache") || contains_ci(rendering, "state") ||
          contains_ci(rendering, "history") || contains_ci(rendering, ".log") ||
          contains_ci(rendering, ".db")) {
        return "FW-STATE";
      }
      if (contains_ci(rendering, "config") || contains_ci(rendering, "settings") ||
          contains_ci(rendering, ".env") || contains_ci(rendering, "rc\"") ||
          contains_ci(rendering, "rc'")) {
        return "FW-CONFIG";
      }
      return std::nullopt;
    default:
      return std::nullopt;
  }
}

// --- Config document -------------------------------------------------------

namespace {

std::vector<CategoryId> parse_category_field(const std::string& text) {
  std::vector<CategoryId> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t bar = text.find('|', start);
    std::string name = text.substr(start, bar == std::string::npos ? std::string::npos
                                                                   : bar - start);
    auto id = category_from_name(name);
    if (!id) {
      throw ScopeError(Errc::TaxonomyInvalid, "unknown category '" + name + "'");
    }
    out.push_back(*id);
    if (bar == std::string::npos) break;
    start = bar + 1;
  }
  return out;
}

Language parse_language(const std::string& name) {
  if (name == "python") return Language::Python;
  if (name == "javascript") return Language::JavaScript;
  if (name == "typescript") return Language::TypeScript;
  if (name == "go") return Language::Go;
  throw ScopeError(Errc::TaxonomyInvalid, "unknown language '" + name + "'");
}

const char* language_config_name(Language lang) {
  switch (lang) {
    case Language::Python: return "python";
    case Language::JavaScript: return "javascript";
    case Language::TypeScript: return "typescript";
    case Language::Go: return "go";
    case Language::Other: return "other";
  }
  return "other";
}

}  // namespace

Taxonomy load_taxonomy(const std::string& config_json) {
  if (config_json.empty()) return default_taxonomy();

  json doc = json::parse(config_json, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    throw ScopeError(Errc::TaxonomyInvalid, "config document is not a JSON object");
  }

  Taxonomy taxonomy;
  for (const json& cat_doc : doc.value("categories", json::array())) {
    Category cat;
    auto id = category_from_name(cat_doc.value("id", ""));
    if (!id) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       "unknown category id '" + cat_doc.value("id", "") + "'");
    }
    cat.id = *id;
    for (const json& label_doc : cat_doc.value("labels", json::array())) {
      SecondLevelLabel label;
      label.code = label_doc.value("code", "");
      label.category = cat.id;
      label.operational_description = label_doc.value("description", "");
      cat.labels.push_back(std::move(label));
    }
    taxonomy.categories_.push_back(std::move(cat));
  }

  for (const json& rule_doc : doc.value("rules", json::array())) {
    LocalizationRule rule;
    rule.candidates = parse_category_field(rule_doc.value("category", ""));
    if (rule_doc.contains("label_hint") && rule_doc["label_hint"].is_string()) {
      rule.label_hint = rule_doc["label_hint"].get<std::string>();
    }
    auto kind = pattern_kind_from_name(rule_doc.value("kind", ""));
    if (!kind) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       "unknown rule kind '" + rule_doc.value("kind", "") + "'");
    }
    rule.kind = *kind;
    rule.pattern = rule_doc.value("pattern", "");
    for (const json& lang_doc : rule_doc.value("languages", json::array())) {
      rule.languages.push_back(parse_language(lang_doc.get<std::string>()));
    }
    taxonomy.rules_.push_back(std::move(rule));
  }

  taxonomy.validate();
  return taxonomy;
}

std::string taxonomy_to_json(const Taxonomy& taxonomy) {
  json doc;
  doc["categories"] = json::array();
  for (const Category& cat : taxonomy.categories()) {
    json cat_doc;
    cat_doc["id"] = category_name(cat.id);
    cat_doc["labels"] = json::array();
    for (const SecondLevelLabel& label : cat.labels) {
      cat_doc["labels"].push_back(
          {{"code", label.code}, {"description", label.operational_description}});
    }
    doc["categories"].push_back(std::move(cat_doc));
  }
  doc["rules"] = json::array();
  for (const LocalizationRule& rule : taxonomy.rules()) {
    json rule_doc;
    std::string cats;
    for (CategoryId id : rule.candidates) {
      if (!cats.empty()) cats += '|';
      cats += category_name(id);
    }
    rule_doc["category"] = cats;
    if (rule.label_hint) rule_doc["label_hint"] = *rule.label_hint;
    rule_doc["kind"] = pattern_kind_name(rule.kind);
    rule_doc["pattern"] = rule.pattern;
    rule_doc["languages"] = json::array();
    for (Language lang : rule.languages) {
      rule_doc["languages"].push_back(language_config_name(lang));
    }
    doc["rules"].push_back(std::move(rule_doc));
  }
  return doc.dump(2);
}

}  // namespace skillscope
