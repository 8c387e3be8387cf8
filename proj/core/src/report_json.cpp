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

#include <nlohmann/json.hpp>

#include "skillscope/checker.hpp"
#include "skillscope/errors.hpp"

namespace skillscope {

using nlohmann::json;

std::string render_check_report(const CheckReport& report, const Verdict& verdict) {
  json doc;
  doc["backend"] = report.backend;
  doc["cause_summary"] = report.cause_summary;
  doc["coarser_description"] = report.coarser_description;

  json declared;
  declared["labels"] = json::array();
  for (const DeclaredLabel& label : report.declared.labels) {
    declared["labels"].push_back(
        {{"category", category_name(label.category)},
         {"label", label.label ? json(*label.label) : json(nullptr)}});
  }
  declared["flows"] = json::array();
  for (const DeclaredFlow& flow : report.declared.flows) {
    declared["flows"].push_back(
        {{"sink", category_name(flow.sink)}, {"source", category_name(flow.source)}});
  }
  declared["evidence"] = json::object();
  for (const auto& [key, phrase] : report.declared.evidence) {
    declared["evidence"][key] = phrase;
  }
  doc["declared"] = std::move(declared);

  doc["evidence_validation"] =
      report.evidence_validation == EvidenceValidation::Sufficient
          ? "sufficient"
          : "graph_extraction_uncertain";

  doc["flow_results"] = json::array();
  for (const FlowFinding& finding : report.flow_results) {
    doc["flow_results"].push_back({{"boundary_kind", boundary_kind_name(finding.boundary_kind)},
                                   {"crosses_boundary", finding.crosses_boundary},
                                   {"declared", finding.declared},
                                   {"edge", finding.edge_index},
                                   {"rationale", finding.rationale}});
  }

  doc["inconsistency"] = report.inconsistency;

  doc["node_results"] = json::array();
  for (const NodeFinding& finding : report.node_results) {
    doc["node_results"].push_back(
        {{"covered", finding.covered},
         {"covering_label",
          finding.covering_label ? json(*finding.covering_label) : json(nullptr)},
         {"node", finding.node},
         {"rationale", finding.rationale}});
  }

  doc["summary"] = {{"flagged", report.summary.flagged},
                    {"relevant_flows", report.summary.relevant_flows},
                    {"relevant_nodes", report.summary.relevant_nodes}};
  doc["verdict"] = verdict_name(verdict.cls);
  return doc.dump(2);
}

namespace {

[[noreturn]] void malformed(const std::string& what) {
  throw ScopeError(Errc::MalformedModelOutput, what);
}

// Model replies often wrap the JSON in markdown fences.
std::string strip_fences(const std::string& text) {
  std::size_t begin = text.find('{');
  std::size_t end = text.rfind('}');
  if (begin == std::string::npos || end == std::string::npos || end < begin) return text;
  return text.substr(begin, end - begin + 1);
}

CategoryId parse_category(const json& value, const char* where) {
  if (!value.is_string()) malformed(std::string(where) + " category is not a string");
  auto id = category_from_name(value.get<std::string>());
  if (!id) malformed(std::string(where) + " names unknown category '" +
                     value.get<std::string>() + "'");
  return *id;
}

}  // namespace

ClassifyResult parse_check_report(const std::string& document, const Taxonomy& taxonomy) {
  json doc = json::parse(strip_fences(document), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) malformed("output is not a JSON object");

  // The eight schema components.
  for (const char* key :
       {"evidence_validation", "declared", "node_results", "flow_results", "summary",
        "inconsistency", "coarser_description", "cause_summary"}) {
    if (!doc.contains(key)) malformed(std::string("missing '") + key + "'");
  }

  ClassifyResult result;
  CheckReport& report = result.report;

  const std::string validation = doc["evidence_validation"].is_string()
                                     ? doc["evidence_validation"].get<std::string>()
                                     : "";
  if (validation == "sufficient") {
    report.evidence_validation = EvidenceValidation::Sufficient;
  } else if (validation == "graph_extraction_uncertain") {
    report.evidence_validation = EvidenceValidation::GraphExtractionUncertain;
  } else {
    malformed("evidence_validation must be 'sufficient' or 'graph_extraction_uncertain'");
  }

  const json& declared = doc["declared"];
  if (!declared.is_object()) malformed("'declared' is not an object");
  for (const json& l : declared.value("labels", json::array())) {
    DeclaredLabel label;
    label.category = parse_category(l.value("category", json()), "declared label");
    if (l.contains("label") && l["label"].is_string()) {
      label.label = l["label"].get<std::string>();
      if (!taxonomy.has_label(*label.label)) {
        malformed("declared label '" + *label.label + "' outside the taxonomy");
      }
    }
    report.declared.labels.push_back(label);
  }
  for (const json& f : declared.value("flows", json::array())) {
    DeclaredFlow flow;
    flow.source = parse_category(f.value("source", json()), "declared flow");
    flow.sink = parse_category(f.value("sink", json()), "declared flow");
    report.declared.flows.push_back(flow);
  }
  if (declared.contains("evidence") && declared["evidence"].is_object()) {
    for (auto it = declared["evidence"].begin(); it != declared["evidence"].end(); ++it) {
      if (it.value().is_string()) report.declared.evidence[it.key()] = it.value();
    }
  }

  if (!doc["node_results"].is_array()) malformed("'node_results' is not an array");
  for (const json& n : doc["node_results"]) {
    NodeFinding finding;
    if (!n.is_object() || !n.contains("node") || !n.contains("covered")) {
      malformed("node result missing 'node'/'covered'");
    }
    finding.node = n["node"].get<int>();
    finding.covered = n["covered"].get<bool>();
    if (n.contains("covering_label") && n["covering_label"].is_string()) {
      finding.covering_label = n["covering_label"].get<std::string>();
    }
    finding.rationale = n.value("rationale", "");
    report.node_results.push_back(std::move(finding));
  }

  if (!doc["flow_results"].is_array()) malformed("'flow_results' is not an array");
  for (const json& f : doc["flow_results"]) {
    FlowFinding finding;
    if (!f.is_object() || !f.contains("crosses_boundary") || !f.contains("declared")) {
      malformed("flow result missing fields");
    }
    finding.edge_index = f.value("edge", -1);
    finding.crosses_boundary = f["crosses_boundary"].get<bool>();
    finding.declared = f["declared"].get<bool>();
    const std::string kind = f.value("boundary_kind", "Other");
    if (kind == "SecretToExternal") finding.boundary_kind = BoundaryKind::SecretToExternal;
    else if (kind == "InputToExec") finding.boundary_kind = BoundaryKind::InputToExec;
    else if (kind == "LocalToExternal") finding.boundary_kind = BoundaryKind::LocalToExternal;
    else if (kind == "Other") finding.boundary_kind = BoundaryKind::Other;
    else malformed("unknown boundary_kind '" + kind + "'");
    finding.rationale = f.value("rationale", "");
    report.flow_results.push_back(std::move(finding));
  }

  const json& summary = doc["summary"];
  if (!summary.is_object()) malformed("'summary' is not an object");
  report.summary.relevant_nodes = summary.value("relevant_nodes", 0);
  report.summary.relevant_flows = summary.value("relevant_flows", 0);
  report.summary.flagged = summary.value("flagged", 0);

  if (!doc["inconsistency"].is_boolean()) malformed("'inconsistency' is not a boolean");
  if (!doc["coarser_description"].is_boolean()) {
    malformed("'coarser_description' is not a boolean");
  }
  report.inconsistency = doc["inconsistency"].get<bool>();
  report.coarser_description = doc["coarser_description"].get<bool>();
  report.cause_summary =
      doc["cause_summary"].is_string() ? doc["cause_summary"].get<std::string>() : "";
  if (doc.contains("backend") && doc["backend"].is_string()) {
    report.backend = doc["backend"].get<std::string>();
  }

  result.verdict = derive_verdict(report);
  return result;
}

}  // namespace skillscope
