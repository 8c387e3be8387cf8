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

#include "skillscope/ir.hpp"
#include "skillscope/skill.hpp"
#include "skillscope/taxonomy.hpp"

namespace skillscope {

enum class SpgEdgeKind { IntraFlow, CrossImport, CrossCall, CrossPath };

const char* spg_edge_kind_name(SpgEdgeKind kind);
std::optional<SpgEdgeKind> spg_edge_kind_from_name(const std::string& name);

/// A security-relevant implementation site. `operation` keeps the
/// source-level rendering of the matched site (never a bare taxonomy
/// label); `pattern` is the localization rule that matched it.
struct SpgNode {
  int id = -1;
  std::string file;
  int line = 0;
  int col = 0;
  CategoryId category = CategoryId::FileRead;
  std::vector<CategoryId> candidates;  // pre-disambiguation, sorted by name
  std::optional<std::string> label_hint;
  std::string pattern;
  std::string operation;
  std::optional<std::string> enclosing_function;
  int ir_node = -1;

  bool operator==(const SpgNode&) const = default;
};

struct SpgEdge {
  int from = -1;
  int to = -1;
  SpgEdgeKind kind = SpgEdgeKind::IntraFlow;

  bool operator==(const SpgEdge&) const = default;
};

struct SpgStats {
  int nodes = 0;
  int edges = 0;
  int distinct_operations = 0;
  bool truncated = false;

  bool operator==(const SpgStats&) const = default;
};

struct PerFileEntry {
  std::vector<int> node_ids;
  std::vector<int> edge_ids;  // IntraFlow edges whose endpoints live in this file
};

/// In-memory diagnostics about the analysis run; never serialized.
struct SpgAnalysis {
  int files_seen = 0;      // analyzable-language files in the skill
  int files_analyzed = 0;  // successfully parsed (possibly with warnings)
  int files_with_warnings = 0;
};

struct Spg {
  std::string skill_id;
  std::vector<SpgNode> nodes;
  std::vector<SpgEdge> edges;
  std::map<std::string, PerFileEntry> per_file;
  SpgStats stats;
  std::vector<SkippedFile> skipped_files;
  SpgAnalysis analysis;

  /// Equality over the serialized structure (per_file and analysis are
  /// derived views).
  bool structurally_equal(const Spg& other) const;
};

/// One SpgNode per (IR site, resolved category): rules of the same category
/// matching the same site collapse into one node, and ambiguous
/// NETWORK_ACCESS/EXTERNAL_API candidates are resolved from the operation
/// text. Returned nodes carry ir_node references but no global ids yet.
std::vector<SpgNode> locate_security_nodes(const FileIR& ir, const Taxonomy& taxonomy);

/// All ordered pairs (u, v), u != v, where v's site is BFS-reachable from
/// u's site over control- and data-flow edges (AST edges excluded).
/// Results are index pairs into `file_nodes`. Sets *truncated when a
/// bounded BFS gave up.
std::vector<std::pair<std::size_t, std::size_t>> discover_edges_bfs(
    const FileIR& ir, const std::vector<SpgNode>& file_nodes, bool* truncated = nullptr,
    const BfsLimits& limits = {});

struct CrossEdgeCriteria {
  bool imports = true;
  bool calls = true;
  bool paths = true;
};

/// Cross-file edges between two files of one skill, both directions.
/// Nodes must carry their final skill-level ids. Evidence kinds:
///   CrossCall: a node's enclosing statement calls a function defined in
///                the other file (import-confirmed); targets every node in
///                that function's body.
///   CrossImport: a node's flow reaches a usage of a symbol imported from
///                the other file; targets that file's module-level nodes.
///   CrossPath: a FILE_WRITE whose operation carries a path literal that a
///                FILE_READ in the other file also carries (normalized
///                comparison; variables are not resolved).
std::vector<SpgEdge> complete_cross_file_edges(const std::vector<SpgNode>& nodes_i,
                                               const FileIR& ir_i,
                                               const std::vector<SpgNode>& nodes_j,
                                               const FileIR& ir_j,
                                               const CrossEdgeCriteria& criteria = {});

struct BuildOptions {
  BfsLimits bfs_limits;
  CrossEdgeCriteria criteria;
};

/// Runs the full per-skill construction: analyze each supported file,
/// locate nodes, discover intra-file edges, then complete cross-file edges
/// over all distinct file pairs. Node ids are assigned by sorted
/// (file, line, col, category), so the result is independent of file
/// order. Throws ScopeError(AllFilesSkipped) when no file could be
/// analyzed.
Spg build_skill_spg(const Skill& skill, const Taxonomy& taxonomy,
                    const BuildOptions& options = {});

/// Key-sorted `code_graph_json` document (2-space indent, stable bytes).
std::string serialize_spg(const Spg& spg);

/// Parses and validates a `code_graph_json` document; recomputes the
/// derived views. Throws ScopeError(SchemaError) on malformed input,
/// unknown ids, self-edges, or cross/intra file mismatches.
Spg deserialize_spg(const std::string& document);

/// Enclosing statement of an arbitrary IR node (walks AST parents).
int enclosing_statement(const FileIR& ir, int node_id);

}  // namespace skillscope
