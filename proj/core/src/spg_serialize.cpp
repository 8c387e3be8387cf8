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
#include <set>

#include <nlohmann/json.hpp>

#include "skillscope/errors.hpp"
#include "skillscope/spg.hpp"

namespace skillscope {

using nlohmann::json;

std::string ir_debug_json(const FileIR& ir) {
  json doc;
  doc["file"] = ir.file;
  doc["language"] = language_name(ir.language);
  doc["nodes"] = json::array();
  for (const IrNode& node : ir.nodes) {
    doc["nodes"].push_back({{"function", node.enclosing_function
                                             ? json(*node.enclosing_function)
                                             : json(nullptr)},
                            {"id", node.id},
                            {"kind", ir_kind_name(node.kind)},
                            {"line", node.span.line_begin},
                            {"rendering", node.rendering}});
  }
  doc["edges"] = json::array();
  for (const IrEdge& edge : ir.edges) {
    const char* kind = edge.kind == IrEdgeKind::Ast   ? "ast"
                       : edge.kind == IrEdgeKind::Cfg ? "cfg"
                                                      : "dfg";
    doc["edges"].push_back({{"from", edge.from}, {"kind", kind}, {"to", edge.to}});
  }
  doc["imports"] = json::array();
  for (const ImportEntry& entry : ir.imports) {
    doc["imports"].push_back(
        {{"local", entry.local}, {"module", entry.module}, {"symbol", entry.symbol}});
  }
  doc["warnings"] = ir.parse_warnings;
  return doc.dump(2);
}

std::string serialize_spg(const Spg& spg) {
  json doc;
  doc["skill_id"] = spg.skill_id;

  doc["nodes"] = json::array();
  for (const SpgNode& node : spg.nodes) {
    json n;
    n["id"] = node.id;
    n["file"] = node.file;
    n["line"] = node.line;
    n["col"] = node.col;
    n["category"] = category_name(node.category);
    n["candidates"] = json::array();
    for (CategoryId id : node.candidates) n["candidates"].push_back(category_name(id));
    n["label_hint"] = node.label_hint ? json(*node.label_hint) : json(nullptr);
    n["pattern"] = node.pattern;
    n["operation"] = node.operation;
    n["function"] =
        node.enclosing_function ? json(*node.enclosing_function) : json(nullptr);
    doc["nodes"].push_back(std::move(n));
  }

  doc["edges"] = json::array();
  for (const SpgEdge& edge : spg.edges) {
    doc["edges"].push_back({{"from", edge.from},
                            {"kind", spg_edge_kind_name(edge.kind)},
                            {"to", edge.to}});
  }

  doc["stats"] = {{"distinct_operations", spg.stats.distinct_operations},
                  {"edges", spg.stats.edges},
                  {"nodes", spg.stats.nodes},
                  {"truncated", spg.stats.truncated}};

  doc["skipped_files"] = json::array();
  for (const SkippedFile& skipped : spg.skipped_files) {
    doc["skipped_files"].push_back({{"file", skipped.path}, {"reason", skipped.reason}});
  }

  return doc.dump(2);
}

namespace {

[[noreturn]] void schema_error(const std::string& what) {
  throw ScopeError(Errc::SchemaError, what);
}

const json& require(const json& doc, const char* key, json::value_t type,
                    const char* where) {
  auto it = doc.find(key);
  if (it == doc.end()) schema_error(std::string(where) + " missing '" + key + "'");
  // Integers may arrive as unsigned; accept any number for number slots.
  if (type == json::value_t::number_integer) {
    if (!it->is_number_integer() && !it->is_number_unsigned()) {
      schema_error(std::string(where) + " field '" + key + "' is not an integer");
    }
    return *it;
  }
  if (it->type() != type) {
    schema_error(std::string(where) + " field '" + key + "' has wrong type");
  }
  return *it;
}

std::string operation_pattern_for(const SpgNode& node) {
  std::size_t paren = node.operation.find('(');
  if (paren != std::string::npos) return node.operation.substr(0, paren) + "(...)";
  std::size_t bracket = node.operation.find('[');
  if (bracket != std::string::npos) return node.operation.substr(0, bracket) + "[...]";
  return node.operation;
}

}  // namespace

Spg deserialize_spg(const std::string& document) {
  json doc = json::parse(document, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) schema_error("document is not a JSON object");

  Spg spg;
  spg.skill_id = require(doc, "skill_id", json::value_t::string, "document");
  const json& nodes = require(doc, "nodes", json::value_t::array, "document");
  const json& edges = require(doc, "edges", json::value_t::array, "document");
  require(doc, "stats", json::value_t::object, "document");
  const json& skipped = require(doc, "skipped_files", json::value_t::array, "document");

  std::set<int> ids;
  for (const json& n : nodes) {
    if (!n.is_object()) schema_error("node entry is not an object");
    SpgNode node;
    node.id = require(n, "id", json::value_t::number_integer, "node").get<int>();
    node.file = require(n, "file", json::value_t::string, "node").get<std::string>();
    node.line = require(n, "line", json::value_t::number_integer, "node").get<int>();
    node.col = require(n, "col", json::value_t::number_integer, "node").get<int>();
    std::string category =
        require(n, "category", json::value_t::string, "node").get<std::string>();
    auto category_id = category_from_name(category);
    if (!category_id) schema_error("node category '" + category + "' unknown");
    node.category = *category_id;
    for (const json& c : require(n, "candidates", json::value_t::array, "node")) {
      auto cid = category_from_name(c.get<std::string>());
      if (!cid) schema_error("node candidate category unknown");
      node.candidates.push_back(*cid);
    }
    if (!n.contains("label_hint")) schema_error("node missing 'label_hint'");
    if (n["label_hint"].is_string()) node.label_hint = n["label_hint"].get<std::string>();
    node.pattern = require(n, "pattern", json::value_t::string, "node").get<std::string>();
    node.operation =
        require(n, "operation", json::value_t::string, "node").get<std::string>();
    if (!n.contains("function")) schema_error("node missing 'function'");
    if (n["function"].is_string()) {
      node.enclosing_function = n["function"].get<std::string>();
    }
    if (!ids.insert(node.id).second) schema_error("duplicate node id");
    spg.nodes.push_back(std::move(node));
  }
  std::sort(spg.nodes.begin(), spg.nodes.end(),
            [](const SpgNode& a, const SpgNode& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < spg.nodes.size(); ++i) {
    if (spg.nodes[i].id != static_cast<int>(i)) {
      schema_error("node ids are not dense 0..n-1");
    }
  }

  for (const json& e : edges) {
    SpgEdge edge;
    edge.from = require(e, "from", json::value_t::number_integer, "edge").get<int>();
    edge.to = require(e, "to", json::value_t::number_integer, "edge").get<int>();
    std::string kind = require(e, "kind", json::value_t::string, "edge").get<std::string>();
    auto kind_id = spg_edge_kind_from_name(kind);
    if (!kind_id) schema_error("edge kind '" + kind + "' unknown");
    edge.kind = *kind_id;
    if (!ids.count(edge.from) || !ids.count(edge.to)) {
      schema_error("edge references missing node id");
    }
    if (edge.from == edge.to) schema_error("self-edge");
    const std::string& file_from = spg.nodes[static_cast<std::size_t>(edge.from)].file;
    const std::string& file_to = spg.nodes[static_cast<std::size_t>(edge.to)].file;
    if (edge.kind == SpgEdgeKind::IntraFlow && file_from != file_to) {
      schema_error("intra_flow edge spans two files");
    }
    if (edge.kind != SpgEdgeKind::IntraFlow && file_from == file_to) {
      schema_error("cross edge inside one file");
    }
    spg.edges.push_back(edge);
  }

  for (const json& s : skipped) {
    SkippedFile entry;
    entry.path = require(s, "file", json::value_t::string, "skipped").get<std::string>();
    entry.reason =
        require(s, "reason", json::value_t::string, "skipped").get<std::string>();
    spg.skipped_files.push_back(std::move(entry));
  }

  // Derived views and stats are recomputed; `truncated` is carried over.
  spg.stats.truncated = doc["stats"].value("truncated", false);
  for (const SpgNode& node : spg.nodes) {
    spg.per_file[node.file].node_ids.push_back(node.id);
  }
  for (std::size_t e = 0; e < spg.edges.size(); ++e) {
    if (spg.edges[e].kind != SpgEdgeKind::IntraFlow) continue;
    spg.per_file[spg.nodes[static_cast<std::size_t>(spg.edges[e].from)].file]
        .edge_ids.push_back(static_cast<int>(e));
  }
  spg.stats.nodes = static_cast<int>(spg.nodes.size());
  spg.stats.edges = static_cast<int>(spg.edges.size());
  std::set<std::string> ops;
  for (const SpgNode& node : spg.nodes) ops.insert(operation_pattern_for(node));
  spg.stats.distinct_operations = static_cast<int>(ops.size());
  return spg;
}

}  // namespace skillscope
