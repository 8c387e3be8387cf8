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

#include <algorithm>
#include <regex>

#include <nlohmann/json.hpp>

#include "skillscope/checker.hpp"
#include "skillscope/errors.hpp"

namespace skillscope {

using nlohmann::json;

bool DeclaredSemantics::has_category(CategoryId id) const {
  return std::any_of(labels.begin(), labels.end(),
                     [&](const DeclaredLabel& l) { return l.category == id; });
}

namespace {

using C = CategoryId;

LexiconEntry entry(C category, const char* label, std::vector<std::string> patterns) {
  LexiconEntry e;
  e.category = category;
  if (label != nullptr) e.label = label;
  e.patterns = std::move(patterns);
  return e;
}

std::vector<LexiconEntry> build_default_lexicon() {
  return {
      entry(C::FileRead, "FR-DATA",
            {R"(\b(read|reads|reading|load|loads|loading|parse|parses|parsing|scan|scans|scanning|process|processes|processing|open|opens|summariz\w+|convert|converts|converting)\b[^.!?;]*\b(file|files|data|dataset|datasets|document|documents|csv|json|text|notes|records?|contents?|sources?|targets?|markdown)\b)",
             R"(\b(provided|user|command[- ]line)[- ](input|inputs|arguments?)\b)"}),
      entry(C::FileRead, "FR-CONFIG",
            {R"(\b(read|reads|load|loads)\b[^.!?;]*\b(config|configuration|settings|environment variables?)\b)"}),
      entry(C::FileRead, "FR-SCRIPT",
            {R"(\b(read|reads|load|loads)\b[^.!?;]*\b(script|scripts|source files?)\b)"}),
      entry(C::FileWrite, nullptr,
            {R"(\b(write|writes|writing|save|saves|saving)\b[^.!?;]*\b(file|files|copy|copies|disk|locally)\b)"}),
      entry(C::FileWrite, "FW-OUTPUT",
            {R"(\b(produce|produces|producing|generate|generates|generating|write|writes|writing|save|saves|saving|create|creates|creating|emit|emits)\b[^.!?;]*\b(report|reports|summary|summaries|output|outputs|result|results|artifact|artifacts)\b)",
             R"(\breport(s|ing)?\b[^.!?;]*\b(result|results|findings|statistics)\b)"}),
      entry(C::FileWrite, "FW-STATE",
            {R"(\b(persist|persists|store|stores|cache|caches|record|records)\b[^.!?;]*\b(state|cache|history|database|logs?|results?)\b)"}),
      entry(C::FileWrite, "FW-STRUCTURE",
            {R"(\b(create|creates|scaffold|scaffolds)\b[^.!?;]*\b(director(y|ies)|folder|folders|structure|layout|project skeleton)\b)"}),
      entry(C::SystemCommand, "SC-CLI",
            {R"(\b(run|runs|running|execute|executes|executing|invoke|invokes|invoking|launch|launches)\b[^.!?;]*\b(shell|command|commands|cli|subprocess|npm|npx|pip|docker|git|make)\b)"}),
      entry(C::SystemCommand, "SC-PY",
            {R"(\b(run|runs|running|execute|executes|executing)\b[^.!?;]*\b(python|script|scripts)\b)"}),
      entry(C::NetworkAccess, "NA-SERVICE",
            {R"(\b(fetch|fetches|fetching|download|downloads|downloading|upload|uploads|uploading|send|sends|sending|post|posts|posting|sync|syncs|syncing|contact|contacts)\b[^.!?;]*\b(service|services|server|servers|endpoint|endpoints|url|urls|web|website|websites|internet|network|remote|cloud|dashboard)\b)",
             R"(\b(access|accesses|call|calls|query|queries)\b[^.!?;]*\b(remote|external)\b[^.!?;]*\b(service|services|server|servers|system|systems)\b)"}),
      entry(C::NetworkAccess, "NA-DOWNLOAD",
            {R"(\b(clone|clones|download|downloads|pull|pulls)\b[^.!?;]*\b(repositor(y|ies)|repo|repos|model|models|dataset|datasets|image|images)\b)"}),
      entry(C::NetworkAccess, "NA-WEB",
            {R"(\b(open|opens|browse|browses|visit|visits)\b[^.!?;]*\b(web ?pages?|websites?|browser|urls?)\b)"}),
      entry(C::ExternalApi, "EA-PLATFORM",
            {R"(\b(call|calls|use|uses|using|access|accesses|query|queries|invoke|invokes|send|sends|upload|uploads|submit|submits)\b[^.!?;]*\bapis?\b)"}),
      entry(C::ExternalApi, "EA-AI",
            {R"(\b(model|llm|ai|inference|completion)s?\b[^.!?;]*\bapis?\b)"}),
      entry(C::SecretAccess, "SA-KEY",
            {R"(\b(api[- ]?keys?|access keys?|passwords?|tokens?|secrets?|credentials?)\b)"}),
      entry(C::SecretAccess, "SA-SESSION", {R"(\b(cookies?|sessions?)\b)"}),
      entry(C::SecretAccess, "SA-ID",
            {R"(\b(email|e-mail|user id|usernames?|identity|accounts?)\b)"}),
      entry(C::DependencyModification, "DM-PKG",
            {R"(\binstall(s|ing)?\b[^.!?;]*\b(package|packages|dependenc(y|ies)|requirements|modules?)\b)",
             R"(\b(pip|npm|uv) install\b)"}),
      entry(C::DependencyModification, "DM-ENV",
            {R"(\b(create|creates|set ?up|provision|provisions)\b[^.!?;]*\b(virtual ?envs?|virtualenvs?|venvs?|conda|containers?|environments?)\b)"}),
      entry(C::DependencyModification, "DM-SYS",
            {R"(\binstall(s|ing)?\b[^.!?;]*\b(system|browsers?|playwright|tex|ocr)\b)"}),
      entry(C::SystemPermissionAccess, "SPA-RESOURCE",
            {R"(\b(change|changes|changing|modify|modifies|modifying|set|sets|setting|adjust|adjusts)\b[^.!?;]*\b(permissions?|ownership|file modes?)\b)",
             R"(\bchmod\b|\bchown\b)"}),
      entry(C::SystemPermissionAccess, "SPA-IAM",
            {R"(\biam\b|\brole polic(y|ies)\b|\bmanage roles?\b)"}),
      entry(C::SystemPermissionAccess, "SPA-VALIDATION",
            {R"(\b(check|checks|verify|verifies)\b[^.!?;]*\b(permissions?|access rights?)\b)"}),
      entry(C::SecurityControl, "SEC-VALIDATION",
            {R"(\bvalidat(e|es|ing|ion)\b[^.!?;]*\b(input|inputs|payloads?|schemas?)\b|\bsanitiz(e|es|ing)\b)"}),
      entry(C::SecurityControl, "SEC-QUERY", {R"(\bparameterized quer(y|ies)\b)"}),
      entry(C::SecurityControl, "SEC-RATE", {R"(\brate[- ]limit(s|ing)?\b)"}),
      entry(C::Observability, "OBS-LOG",
            {R"(\bstructured logs?\b|\blogs?\b|\blogging\b)"}),
      entry(C::Infrastructure, "INF-HEALTH",
            {R"(\bhealth[- ]?checks?\b|\bhealth endpoints?\b|\bstatus (page|endpoint)s?\b)"}),
  };
}

struct SentenceMatch {
  CategoryId category;
  std::optional<std::string> label;
  std::string phrase;
  int sentence = 0;
};

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> sentences;
  std::string cur;
  for (char c : text) {
    if (c == '.' || c == '!' || c == '?' || c == '\n' || c == ';') {
      if (!cur.empty()) sentences.push_back(cur);
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) sentences.push_back(cur);
  return sentences;
}

std::string label_key(const DeclaredLabel& label) {
  return label.label ? *label.label : category_name(label.category);
}

bool is_flow_source(CategoryId id) {
  return id == CategoryId::SecretAccess || id == CategoryId::FileRead;
}

bool is_flow_sink(CategoryId id) {
  return id == CategoryId::NetworkAccess || id == CategoryId::ExternalApi ||
         id == CategoryId::SystemCommand;
}

}  // namespace

const std::vector<LexiconEntry>& default_lexicon() {
  static const std::vector<LexiconEntry> lexicon = build_default_lexicon();
  return lexicon;
}

std::vector<LexiconEntry> load_lexicon(const std::string& config_json) {
  if (config_json.empty()) return default_lexicon();
  json doc = json::parse(config_json, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || !doc.contains("lexicon")) {
    return default_lexicon();
  }
  std::vector<LexiconEntry> out;
  for (const json& e : doc["lexicon"]) {
    LexiconEntry item;
    auto category = category_from_name(e.value("category", ""));
    if (!category) {
      throw ScopeError(Errc::TaxonomyInvalid,
                       "lexicon entry names unknown category '" + e.value("category", "") +
                           "'");
    }
    item.category = *category;
    if (e.contains("label") && e["label"].is_string()) {
      item.label = e["label"].get<std::string>();
    }
    for (const json& p : e.value("patterns", json::array())) {
      item.patterns.push_back(p.get<std::string>());
    }
    out.push_back(std::move(item));
  }
  return out;
}

DeclaredSemantics extract_declared_semantics(const Description& description,
                                             const Taxonomy& taxonomy) {
  return extract_declared_semantics(description, taxonomy, default_lexicon());
}

DeclaredSemantics extract_declared_semantics(const Description& description,
                                             const Taxonomy& taxonomy,
                                             const std::vector<LexiconEntry>& lexicon) {
  DeclaredSemantics declared;
  const std::vector<std::string> sentences = split_sentences(description.declared_text());

  // A capability the description explicitly rules out is not declared.
  static const std::regex negation(
      R"(\b(never|not|no|without|won'?t|doesn'?t|don'?t|must not)\s*$)",
      std::regex::ECMAScript | std::regex::icase);

  std::vector<SentenceMatch> matches;
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    for (const LexiconEntry& item : lexicon) {
      if (item.label && !taxonomy.has_label(*item.label)) continue;
      for (const std::string& pattern : item.patterns) {
        std::smatch m;
        std::regex re(pattern, std::regex::ECMAScript | std::regex::icase);
        if (std::regex_search(sentences[s], m, re)) {
          std::size_t at = static_cast<std::size_t>(m.position(0));
          std::size_t from = at > 32 ? at - 32 : 0;
          std::string before = sentences[s].substr(from, at - from);
          if (std::regex_search(before, negation)) break;
          matches.push_back({item.category, item.label, m.str(0), static_cast<int>(s)});
          break;
        }
      }
    }
  }

  for (const SentenceMatch& match : matches) {
    DeclaredLabel label{match.category, match.label};
    if (std::find(declared.labels.begin(), declared.labels.end(), label) ==
        declared.labels.end()) {
      declared.labels.push_back(label);
      declared.evidence[label_key(label)] = match.phrase;
      declared.evidence_sentence[label_key(label)] = match.sentence;
    }
  }

  // Declared flows: a source and a sink capability in one sentence joined by
  // a connective.
  static const std::regex connective(
      R"(\b(to|into|via|through|using|with|on|over|then)\b)",
      std::regex::ECMAScript | std::regex::icase);
  for (std::size_t s = 0; s < sentences.size(); ++s) {
    if (!std::regex_search(sentences[s], connective)) continue;
    for (const SentenceMatch& src : matches) {
      if (src.sentence != static_cast<int>(s) || !is_flow_source(src.category)) continue;
      for (const SentenceMatch& sink : matches) {
        if (sink.sentence != static_cast<int>(s) || !is_flow_sink(sink.category)) continue;
        DeclaredFlow flow{src.category, sink.category};
        if (std::find(declared.flows.begin(), declared.flows.end(), flow) ==
            declared.flows.end()) {
          declared.flows.push_back(flow);
        }
      }
    }
  }

  std::sort(declared.labels.begin(), declared.labels.end(),
            [](const DeclaredLabel& a, const DeclaredLabel& b) {
              std::string an = category_name(a.category);
              std::string bn = category_name(b.category);
              if (an != bn) return an < bn;
              return a.label.value_or("") < b.label.value_or("");
            });
  std::sort(declared.flows.begin(), declared.flows.end(),
            [](const DeclaredFlow& a, const DeclaredFlow& b) {
              std::string as = category_name(a.source);
              std::string bs = category_name(b.source);
              if (as != bs) return as < bs;
              return std::string(category_name(a.sink)) < category_name(b.sink);
            });
  return declared;
}

const char* boundary_kind_name(BoundaryKind kind) {
  switch (kind) {
    case BoundaryKind::SecretToExternal: return "SecretToExternal";
    case BoundaryKind::InputToExec: return "InputToExec";
    case BoundaryKind::LocalToExternal: return "LocalToExternal";
    case BoundaryKind::Other: return "Other";
  }
  return "?";
}

const char* verdict_name(VerdictClass verdict) {
  switch (verdict) {
    case VerdictClass::Inconsistent: return "Inconsistent";
    case VerdictClass::CoarserDescription: return "CoarserDescription";
    case VerdictClass::Consistent: return "Consistent";
    case VerdictClass::Uncertain: return "Uncertain";
  }
  return "?";
}

std::optional<VerdictClass> verdict_from_name(const std::string& name) {
  if (name == "Inconsistent") return VerdictClass::Inconsistent;
  if (name == "CoarserDescription") return VerdictClass::CoarserDescription;
  if (name == "Consistent") return VerdictClass::Consistent;
  if (name == "Uncertain") return VerdictClass::Uncertain;
  return std::nullopt;
}

}  // namespace skillscope
