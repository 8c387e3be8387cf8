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
#include <cctype>
#include <set>

#include "skillscope/checker.hpp"

namespace skillscope {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool contains_ci(const std::string& haystack, const std::string& needle) {
  return lower(haystack).find(lower(needle)) != std::string::npos;
}

// Target classes recognizable from an operation rendering.
enum class TargetClass { Secret, Session, Identity, Url, Path, Command, Package, Permission };

std::set<TargetClass> target_classes(const SpgNode& node) {
  std::set<TargetClass> classes;
  const std::string& op = node.operation;
  if (contains_ci(op, "key") || contains_ci(op, "token") || contains_ci(op, "secret") ||
      contains_ci(op, "passw") || contains_ci(op, "credential")) {
    classes.insert(TargetClass::Secret);
  }
  if (contains_ci(op, "cookie") || contains_ci(op, "session")) {
    classes.insert(TargetClass::Session);
  }
  if (contains_ci(op, "email") || contains_ci(op, "username")) {
    classes.insert(TargetClass::Identity);
  }
  if (op.find("http://") != std::string::npos || op.find("https://") != std::string::npos ||
      op.find("www.") != std::string::npos) {
    classes.insert(TargetClass::Url);
  }
  // Quoted literal with a separator or extension marks a path target.
  bool in_quote = false;
  char quote = 0;
  std::string lit;
  for (char c : op) {
    if (!in_quote && (c == '\'' || c == '"' || c == '`')) {
      in_quote = true;
      quote = c;
      lit.clear();
      continue;
    }
    if (in_quote && c == quote) {
      in_quote = false;
      if (lit.size() >= 3 &&
          (lit.find('/') != std::string::npos ||
           (lit.find('.') != std::string::npos && lit.find("http") != 0))) {
        classes.insert(TargetClass::Path);
      }
      continue;
    }
    if (in_quote) lit += c;
  }
  if (node.category == CategoryId::SystemCommand) classes.insert(TargetClass::Command);
  if (node.category == CategoryId::DependencyModification) {
    classes.insert(TargetClass::Package);
  }
  if (node.category == CategoryId::SystemPermissionAccess) {
    classes.insert(TargetClass::Permission);
  }
  return classes;
}

// Target classes a second-level label's operational scope spans.
std::set<TargetClass> coverage_classes(const std::string& label_code) {
  auto prefix_is = [&](const char* p) { return label_code.rfind(p, 0) == 0; };
  if (label_code == "SA-KEY") return {TargetClass::Secret};
  if (label_code == "SA-SESSION") return {TargetClass::Session};
  if (label_code == "SA-ID") return {TargetClass::Identity};
  if (prefix_is("FR-") || prefix_is("FW-")) return {TargetClass::Path};
  if (prefix_is("SC-")) return {TargetClass::Command, TargetClass::Path};
  if (prefix_is("NA-") || prefix_is("EA-")) return {TargetClass::Url};
  if (prefix_is("DM-")) return {TargetClass::Package, TargetClass::Command};
  if (prefix_is("SPA-")) return {TargetClass::Permission, TargetClass::Path};
  // SEC-/OBS-/INF- labels describe implementation-side details.
  return {TargetClass::Secret, TargetClass::Session, TargetClass::Identity,
          TargetClass::Url,    TargetClass::Path,    TargetClass::Command,
          TargetClass::Package, TargetClass::Permission};
}

bool is_detail_category(CategoryId id) {
  return id == CategoryId::SecurityControl || id == CategoryId::Observability ||
         id == CategoryId::Infrastructure;
}

bool is_scaffolding(const SpgNode& node) {
  return node.category == CategoryId::FileWrite && node.label_hint &&
         *node.label_hint == "FW-STRUCTURE";
}

}  // namespace

NodeFinding check_node_c1(const SpgNode& node, const DeclaredSemantics& declared,
                          const Taxonomy& taxonomy) {
  NodeFinding finding;
  finding.node = node.id;

  // Observability, security-control, infrastructure sites and directory
  // scaffolding are implementation-side details inside the declared task
  // scope, not capability expansion.
  if (is_detail_category(node.category) || is_scaffolding(node)) {
    finding.covered = true;
    finding.covering_label =
        node.label_hint ? *node.label_hint : category_name(node.category);
    finding.rationale = std::string("implementation-side detail (") +
                        category_name(node.category) + ") within the declared task scope";
    return finding;
  }

  std::vector<const DeclaredLabel*> entries;
  for (const DeclaredLabel& label : declared.labels) {
    if (label.category == node.category) entries.push_back(&label);
  }
  if (entries.empty()) {
    finding.covered = false;
    finding.rationale = std::string("no declared capability covers ") +
                        category_name(node.category) + " operation `" + node.operation +
                        "`";
    return finding;
  }

  // A category-level declaration covers every target in the category.
  for (const DeclaredLabel* entry : entries) {
    if (!entry->label) {
      finding.covered = true;
      finding.covering_label = category_name(node.category);
      finding.rationale = "declared capability covers this category";
      return finding;
    }
  }

  std::set<TargetClass> classes = target_classes(node);
  for (const DeclaredLabel* entry : entries) {
    const SecondLevelLabel* label = taxonomy.find_label(*entry->label);
    if (label == nullptr) continue;
    if (classes.empty()) {
      finding.covered = true;
      finding.covering_label = *entry->label;
      finding.rationale = "no distinct operation target; covered by " + *entry->label;
      return finding;
    }
    std::set<TargetClass> covered = coverage_classes(*entry->label);
    bool compatible = std::any_of(classes.begin(), classes.end(), [&](TargetClass c) {
      return covered.count(c) > 0;
    });
    if (compatible) {
      finding.covered = true;
      finding.covering_label = *entry->label;
      finding.rationale = "operation target compatible with " + *entry->label + " (" +
                          label->operational_description + ")";
      return finding;
    }
  }

  finding.covered = false;
  finding.rationale = std::string("declared ") + category_name(node.category) +
                      " capabilities do not cover the target of `" + node.operation + "`";
  return finding;
}

FlowFinding check_flow_c2(const SpgEdge& edge, int edge_index, const SpgNode& from,
                          const SpgNode& to, const DeclaredSemantics& declared) {
  FlowFinding finding;
  finding.edge_index = edge_index;

  const bool to_external =
      to.category == CategoryId::NetworkAccess || to.category == CategoryId::ExternalApi;
  if (from.category == CategoryId::SecretAccess && to_external) {
    finding.boundary_kind = BoundaryKind::SecretToExternal;
  } else if (from.category == CategoryId::FileRead &&
             to.category == CategoryId::SystemCommand) {
    finding.boundary_kind = BoundaryKind::InputToExec;
  } else if (from.category == CategoryId::FileRead && to_external) {
    finding.boundary_kind = BoundaryKind::LocalToExternal;
  } else {
    finding.boundary_kind = BoundaryKind::Other;
  }
  finding.crosses_boundary = finding.boundary_kind != BoundaryKind::Other;

  if (finding.crosses_boundary) {
    for (const DeclaredFlow& flow : declared.flows) {
      if (flow.source == from.category && flow.sink == to.category) {
        finding.declared = true;
        break;
      }
    }
    if (!finding.declared) {
      // Both endpoints covered by one declared sentence also counts.
      int from_sentence = -1, to_sentence = -2;
      for (const DeclaredLabel& label : declared.labels) {
        std::string key = label.label ? *label.label : category_name(label.category);
        auto it = declared.evidence_sentence.find(key);
        if (it == declared.evidence_sentence.end()) continue;
        if (label.category == from.category && from_sentence < 0) {
          from_sentence = it->second;
        }
        if (label.category == to.category) to_sentence = it->second;
      }
      if (from_sentence >= 0 && from_sentence == to_sentence) finding.declared = true;
    }
  }

  std::string evidence =
      edge.kind == SpgEdgeKind::IntraFlow ? "intra-file flow" : "cross-file dependency";
  if (edge.kind != SpgEdgeKind::IntraFlow) evidence += " (conservative evidence)";
  finding.rationale = std::string(boundary_kind_name(finding.boundary_kind)) + ": `" +
                      from.operation + "` -> `" + to.operation + "` via " + evidence;
  return finding;
}

Verdict derive_verdict(const CheckReport& report) {
  Verdict verdict;
  if (report.evidence_validation == EvidenceValidation::GraphExtractionUncertain) {
    verdict.cls = VerdictClass::Uncertain;
  } else if (report.inconsistency) {
    verdict.cls = VerdictClass::Inconsistent;
  } else if (report.coarser_description) {
    verdict.cls = VerdictClass::CoarserDescription;
  } else {
    verdict.cls = VerdictClass::Consistent;
  }
  return verdict;
}

ClassifyResult uncertain_result(const std::string& cause, const std::string& backend) {
  ClassifyResult result;
  result.report.evidence_validation = EvidenceValidation::GraphExtractionUncertain;
  result.report.cause_summary = cause;
  result.report.backend = backend;
  result.verdict = derive_verdict(result.report);
  return result;
}

namespace {

// Literals in an operation that carry concrete targets (paths, URLs).
std::vector<std::string> detail_literals(const std::string& operation) {
  std::vector<std::string> out;
  bool in_quote = false;
  char quote = 0;
  std::string lit;
  for (char c : operation) {
    if (!in_quote && (c == '\'' || c == '"' || c == '`')) {
      in_quote = true;
      quote = c;
      lit.clear();
      continue;
    }
    if (in_quote && c == quote) {
      in_quote = false;
      bool url = lit.rfind("http://", 0) == 0 || lit.rfind("https://", 0) == 0;
      bool pathish = lit.find('/') != std::string::npos;
      if (!pathish && lit.size() >= 3) {
        std::size_t dot = lit.find_last_of('.');
        if (dot != std::string::npos && dot + 1 < lit.size() &&
            lit.size() - dot - 1 <= 4) {
          pathish = true;
          for (std::size_t k = dot + 1; k < lit.size(); ++k) {
            if (!std::isalnum(static_cast<unsigned char>(lit[k]))) pathish = false;
          }
        }
      }
      if (lit.size() >= 3 && (url || pathish)) out.push_back(lit);
      continue;
    }
    if (in_quote) lit += c;
  }
  return out;
}

}  // namespace

ClassifyResult classify(const Spg& spg, const Description& description,
                        const Taxonomy& taxonomy) {
  return classify(spg, description, taxonomy, default_lexicon());
}

ClassifyResult classify(const Spg& spg, const Description& description,
                        const Taxonomy& taxonomy,
                        const std::vector<LexiconEntry>& lexicon) {
  if (spg.analysis.files_analyzed > 0 &&
      spg.analysis.files_with_warnings * 2 > spg.analysis.files_analyzed) {
    return uncertain_result("more than half of the implementation files carried parse "
                            "warnings; graph evidence is unreliable",
                            "rule-engine");
  }

  ClassifyResult result;
  CheckReport& report = result.report;
  report.backend = "rule-engine";
  report.declared = extract_declared_semantics(description, taxonomy, lexicon);

  int flagged = 0;
  for (const SpgNode& node : spg.nodes) {
    NodeFinding finding = check_node_c1(node, report.declared, taxonomy);
    if (!finding.covered) ++flagged;
    report.node_results.push_back(std::move(finding));
  }
  for (std::size_t e = 0; e < spg.edges.size(); ++e) {
    const SpgEdge& edge = spg.edges[e];
    FlowFinding finding =
        check_flow_c2(edge, static_cast<int>(e),
                      spg.nodes[static_cast<std::size_t>(edge.from)],
                      spg.nodes[static_cast<std::size_t>(edge.to)], report.declared);
    if (finding.flagged()) ++flagged;
    report.flow_results.push_back(std::move(finding));
  }

  report.summary.relevant_nodes = static_cast<int>(spg.nodes.size());
  report.summary.relevant_flows = static_cast<int>(spg.edges.size());
  report.summary.flagged = flagged;
  report.inconsistency = flagged >= 1;

  // Coarser description: nothing flagged, but a covered node carries a
  // concrete target the description does not literally state.
  std::string detail_example;
  if (!report.inconsistency) {
    const std::string declared_text = lower(description.declared_text());
    for (std::size_t n = 0; n < spg.nodes.size(); ++n) {
      if (!report.node_results[n].covered) continue;
      for (const std::string& lit : detail_literals(spg.nodes[n].operation)) {
        if (declared_text.find(lower(lit)) == std::string::npos) {
          report.coarser_description = true;
          if (detail_example.empty()) detail_example = lit;
        }
      }
    }
  }

  // Cause summary for reviewers.
  if (report.inconsistency) {
    std::set<std::string> undeclared;
    for (std::size_t n = 0; n < report.node_results.size(); ++n) {
      if (!report.node_results[n].covered) {
        undeclared.insert(category_name(spg.nodes[n].category));
      }
    }
    int flagged_flows = 0;
    std::set<std::string> kinds;
    for (const FlowFinding& f : report.flow_results) {
      if (f.flagged()) {
        ++flagged_flows;
        kinds.insert(boundary_kind_name(f.boundary_kind));
      }
    }
    std::string cats;
    for (const std::string& c : undeclared) cats += (cats.empty() ? "" : ", ") + c;
    report.cause_summary = "undeclared behavior";
    if (!cats.empty()) report.cause_summary += " (" + cats + ")";
    if (flagged_flows > 0) {
      std::string kind_list;
      for (const std::string& k : kinds) kind_list += (kind_list.empty() ? "" : ", ") + k;
      report.cause_summary += "; undeclared flow (" + kind_list + ")";
    }
  } else if (report.coarser_description) {
    report.cause_summary =
        "implementation adds finer detail (`" + detail_example + "`) within declared scope";
  } else {
    report.cause_summary = "all security-relevant behavior within declared scope";
  }

  result.verdict = derive_verdict(report);
  return result;
}

}  // namespace skillscope
