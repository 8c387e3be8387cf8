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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "skillscope/skill.hpp"
#include "skillscope/spg.hpp"
#include "skillscope/taxonomy.hpp"

namespace skillscope {

/// A capability the description explicitly declares: a category, optionally
/// narrowed to one second-level label.
struct DeclaredLabel {
  CategoryId category = CategoryId::FileRead;
  std::optional<std::string> label;

  bool operator==(const DeclaredLabel&) const = default;
};

struct DeclaredFlow {
  CategoryId source = CategoryId::FileRead;
  CategoryId sink = CategoryId::SystemCommand;

  bool operator==(const DeclaredFlow&) const = default;
};

struct DeclaredSemantics {
  std::vector<DeclaredLabel> labels;        // sorted, unique
  std::vector<DeclaredFlow> flows;          // sorted, unique
  std::map<std::string, std::string> evidence;  // label key -> quoted phrase
  std::map<std::string, int> evidence_sentence;  // label key -> sentence index

  bool has_category(CategoryId id) const;
};

enum class EvidenceValidation { Sufficient, GraphExtractionUncertain };

struct NodeFinding {
  int node = -1;
  bool covered = false;
  std::optional<std::string> covering_label;
  std::string rationale;
};

enum class BoundaryKind { SecretToExternal, InputToExec, LocalToExternal, Other };

const char* boundary_kind_name(BoundaryKind kind);

struct FlowFinding {
  int edge_index = -1;
  bool crosses_boundary = false;
  bool declared = false;
  BoundaryKind boundary_kind = BoundaryKind::Other;
  std::string rationale;

  bool flagged() const { return crosses_boundary && !declared; }
};

struct CheckSummary {
  int relevant_nodes = 0;
  int relevant_flows = 0;
  int flagged = 0;
};

/// The structured checking output: evidence validation, declared semantics,
/// node- and flow-level results, summary counts, the two final results, and
/// a cause summary for reviewers.
struct CheckReport {
  EvidenceValidation evidence_validation = EvidenceValidation::Sufficient;
  DeclaredSemantics declared;
  std::vector<NodeFinding> node_results;
  std::vector<FlowFinding> flow_results;
  CheckSummary summary;
  bool inconsistency = false;
  bool coarser_description = false;
  std::string cause_summary;
  std::string backend = "rule-engine";
};

enum class VerdictClass { Inconsistent, CoarserDescription, Consistent, Uncertain };

const char* verdict_name(VerdictClass verdict);
std::optional<VerdictClass> verdict_from_name(const std::string& name);

struct Verdict {
  VerdictClass cls = VerdictClass::Consistent;
};

/// Exclusive class per skill, precedence Inconsistent > CoarserDescription >
/// Consistent; Uncertain exactly when evidence validation failed.
Verdict derive_verdict(const CheckReport& report);

/// Optional overrides for the shipped phrase lexicon (taxonomy config
/// documents may carry a `lexicon` array).
struct LexiconEntry {
  CategoryId category = CategoryId::FileRead;
  std::optional<std::string> label;
  std::vector<std::string> patterns;  // case-insensitive regexes over sentences
};

/// Maps explicit description statements to declared labels using the phrase
/// lexicon; never infers unstated capabilities. Declared flows are added
/// when one sentence links a source and a sink capability with a
/// connective.
DeclaredSemantics extract_declared_semantics(const Description& description,
                                             const Taxonomy& taxonomy);
DeclaredSemantics extract_declared_semantics(const Description& description,
                                             const Taxonomy& taxonomy,
                                             const std::vector<LexiconEntry>& lexicon);

const std::vector<LexiconEntry>& default_lexicon();

/// Parses the optional `lexicon` section of a config document; returns the
/// default lexicon when the document is empty or has no such section.
std::vector<LexiconEntry> load_lexicon(const std::string& config_json);

/// C1: is the node's security-relevant object covered by a declared
/// capability? Implementation-detail categories (SECURITY_CONTROL,
/// OBSERVABILITY, INFRASTRUCTURE) and directory scaffolding count as
/// covered workflow details rather than boundary expansion.
NodeFinding check_node_c1(const SpgNode& node, const DeclaredSemantics& declared,
                          const Taxonomy& taxonomy);

/// C2: does the edge cross a security domain boundary the description does
/// not cover?
FlowFinding check_flow_c2(const SpgEdge& edge, int edge_index, const SpgNode& from,
                          const SpgNode& to, const DeclaredSemantics& declared);

struct ClassifyResult {
  CheckReport report;
  Verdict verdict;
};

/// Rule-engine backend: deterministic checking of one skill's SPG against
/// its description.
ClassifyResult classify(const Spg& spg, const Description& description,
                        const Taxonomy& taxonomy);
ClassifyResult classify(const Spg& spg, const Description& description,
                        const Taxonomy& taxonomy, const std::vector<LexiconEntry>& lexicon);

/// Report for a skill whose graph evidence is unavailable or insufficient.
ClassifyResult uncertain_result(const std::string& cause, const std::string& backend);

/// Key-sorted JSON rendering of a report plus its derived verdict.
std::string render_check_report(const CheckReport& report, const Verdict& verdict);

/// Parses a report document (model output or a rendered report). Throws
/// ScopeError(MalformedModelOutput) when required components are missing or
/// carry the wrong types.
ClassifyResult parse_check_report(const std::string& document, const Taxonomy& taxonomy);

}  // namespace skillscope
