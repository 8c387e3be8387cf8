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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "skillscope/skill.hpp"

namespace skillscope {

enum class IrKind {
  Statement,
  CallExpr,
  MemberAccess,
  Assign,
  Param,
  Literal,
  FunctionDef,
  Other,
};

const char* ir_kind_name(IrKind kind);

enum class IrEdgeKind { Ast, Cfg, Dfg };

struct Span {
  int line_begin = 0;  // 1-based
  int col_begin = 0;   // 1-based
  int line_end = 0;
  int col_end = 0;

  bool operator==(const Span&) const = default;
};

struct IrNode {
  int id = -1;
  IrKind kind = IrKind::Other;
  Span span;
  std::string rendering;  // whitespace-normalized, literals truncated at 64 chars
  std::optional<std::string> enclosing_function;
};

struct IrEdge {
  int from = -1;
  int to = -1;
  IrEdgeKind kind = IrEdgeKind::Ast;

  bool operator==(const IrEdge&) const = default;
};

struct ImportEntry {
  std::string local;   // name bound in this file ("" for side-effect imports)
  std::string module;  // module or path text as written
  std::string symbol;  // imported symbol for `from m import x` forms, else ""
};

struct FunctionInfo {
  std::string name;
  int def_node = -1;
  int body_begin = -1;  // node id range of the body, inclusive; -1 when empty
  int body_end = -1;
  std::vector<int> param_nodes;
  std::vector<std::string> param_names;
  std::vector<int> return_stmts;
};

struct CallSite {
  int node = -1;          // CallExpr node id
  std::string callee;     // dotted callee rendering
  int stmt = -1;          // enclosing statement node id
};

/// Per-file flow IR. Dfg edges cover both def-use over simple variable
/// names and value propagation (nested expression into its consumer,
/// right-hand side into its assignment, argument into a locally-defined
/// callee's parameter, return expression back to the call site).
struct FileIR {
  std::string file;
  Language language = Language::Other;
  std::vector<IrNode> nodes;
  std::vector<IrEdge> edges;
  std::vector<ImportEntry> imports;
  std::vector<CallSite> call_sites;
  std::vector<FunctionInfo> functions;
  std::vector<std::string> parse_warnings;

  const IrNode& node(int id) const;
};

/// Builds the FileIR for a Python, JavaScript, or TypeScript file.
/// TypeScript is type-stripped and parsed with the JavaScript frontend.
/// Unparsable regions degrade to Other nodes with warnings; this never
/// throws on authored text. Throws ScopeError(UnsupportedLanguage) for Go
/// and Other.
FileIR analyze_file(const ImplementationFile& file);

struct EdgeKindMask {
  bool cfg = false;
  bool dfg = false;
  bool ast = false;  // never set by SPG construction
};

inline constexpr EdgeKindMask kFlowEdges{true, true, false};

/// Directed reachability over the selected edge kinds (a path of length
/// >= 1). Throws ScopeError(UnknownNode) when an endpoint id is missing.
bool reachable(const FileIR& ir, int from, int to, EdgeKindMask kinds = kFlowEdges);

struct BfsLimits {
  std::size_t max_visited = 100000;
  std::size_t max_depth = 10000;
};

struct ReachSet {
  std::vector<int> reached;  // excludes the start node unless on a cycle
  bool truncated = false;
};

/// Single-source BFS over the selected edge kinds, bounded by `limits`.
ReachSet bfs_reach(const FileIR& ir, int from, EdgeKindMask kinds,
                   const BfsLimits& limits = {});

/// Debugging view of a FileIR (same JSON conventions as the graph
/// document); not part of any external interface.
std::string ir_debug_json(const FileIR& ir);

}  // namespace skillscope
