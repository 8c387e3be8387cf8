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

#include "skillscope/spg.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "skillscope/errors.hpp"

namespace skillscope {

const char* spg_edge_kind_name(SpgEdgeKind kind) {
  switch (kind) {
    case SpgEdgeKind::IntraFlow: return "intra_flow";
    case SpgEdgeKind::CrossImport: return "cross_import";
    case SpgEdgeKind::CrossCall: return "cross_call";
    case SpgEdgeKind::CrossPath: return "cross_path";
  }
  return "?";
}

std::optional<SpgEdgeKind> spg_edge_kind_from_name(const std::string& name) {
  if (name == "intra_flow") return SpgEdgeKind::IntraFlow;
  if (name == "cross_import") return SpgEdgeKind::CrossImport;
  if (name == "cross_call") return SpgEdgeKind::CrossCall;
  if (name == "cross_path") return SpgEdgeKind::CrossPath;
  return std::nullopt;
}

int enclosing_statement(const FileIR& ir, int node_id) {
  ir.node(node_id);
  std::map<int, int> parent;
  for (const IrEdge& edge : ir.edges) {
    if (edge.kind == IrEdgeKind::Ast) parent[edge.to] = edge.from;
  }
  int cur = node_id;
  for (int hops = 0; hops < 10000; ++hops) {
    IrKind kind = ir.node(cur).kind;
    if (kind == IrKind::Statement || kind == IrKind::Assign ||
        kind == IrKind::FunctionDef || kind == IrKind::Other) {
      return cur;
    }
    auto it = parent.find(cur);
    if (it == parent.end()) return cur;
    cur = it->second;
  }
  return cur;
}

std::vector<SpgNode> locate_security_nodes(const FileIR& ir, const Taxonomy& taxonomy) {
  std::vector<SpgNode> out;
  for (const IrNode& node : ir.nodes) {
    if (node.kind != IrKind::CallExpr && node.kind != IrKind::MemberAccess) continue;
    std::vector<RuleMatch> matches = match_rules(node.rendering, ir.language, taxonomy);
    if (matches.empty()) continue;

    // Group by resolved category; one SpgNode per category on this site.
    std::map<std::string, const LocalizationRule*> winners;
    for (const RuleMatch& match : matches) {
      CategoryId resolved = resolve_candidates(match.rule->candidates, node.rendering);
      std::string key = category_name(resolved);
      auto it = winners.find(key);
      if (it == winners.end() || match.rule->pattern < it->second->pattern) {
        winners[key] = match.rule;
      }
    }

    for (const auto& [category_key, rule] : winners) {
      SpgNode spg_node;
      spg_node.file = ir.file;
      spg_node.line = node.span.line_begin;
      spg_node.col = node.span.col_begin;
      spg_node.category = *category_from_name(category_key);
      spg_node.candidates = rule->candidates;
      std::sort(spg_node.candidates.begin(), spg_node.candidates.end(),
                [](CategoryId a, CategoryId b) {
                  return std::string(category_name(a)) < category_name(b);
                });
      spg_node.label_hint =
          refine_label_hint(spg_node.category, rule->label_hint, node.rendering);
      spg_node.pattern = rule->pattern;
      spg_node.operation = node.rendering;
      spg_node.enclosing_function = node.enclosing_function;
      spg_node.ir_node = node.id;
      out.push_back(std::move(spg_node));
    }
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> discover_edges_bfs(
    const FileIR& ir, const std::vector<SpgNode>& file_nodes, bool* truncated,
    const BfsLimits& limits) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t u = 0; u < file_nodes.size(); ++u) {
    ReachSet reach = bfs_reach(ir, file_nodes[u].ir_node, kFlowEdges, limits);
    if (reach.truncated && truncated != nullptr) *truncated = true;
    for (std::size_t v = 0; v < file_nodes.size(); ++v) {
      if (u == v) continue;
      if (std::binary_search(reach.reached.begin(), reach.reached.end(),
                             file_nodes[v].ir_node)) {
        edges.emplace_back(u, v);
      }
    }
  }
  return edges;
}

// --- Cross-file edge completion ----------------------------------------------

namespace {

std::string strip_extension(const std::string& path) {
  std::size_t slash = path.find_last_of('/');
  std::size_t dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path;
  return path.substr(0, dot);
}

// Does an import module text refer to the given skill-relative file path?
bool module_matches_file(const std::string& module_text, const std::string& file_path) {
  if (module_text.empty()) return false;
  std::string module = module_text;
  // Python relative prefixes and dotted packages.
  while (!module.empty() && module.front() == '.') {
    if (module.size() >= 2 && module[1] == '/') {
      module = module.substr(2);  // ./ prefix
    } else {
      module = module.substr(1);  // leading package dots
    }
  }
  std::replace(module.begin(), module.end(), '.', '/');
  // JS explicit extensions survive the dot replacement as `/js`; undo.
  for (const char* ext : {"/js", "/ts", "/mjs", "/cjs"}) {
    std::string suffix = ext;
    if (module.size() > suffix.size() &&
        module.compare(module.size() - suffix.size(), suffix.size(), suffix) == 0) {
      module = module.substr(0, module.size() - suffix.size());
    }
  }
  if (module.empty()) return false;
  std::string target = strip_extension(file_path);
  if (target == module) return true;
  return target.size() > module.size() &&
         target.compare(target.size() - module.size() - 1, module.size() + 1,
                        "/" + module) == 0;
}

std::vector<std::string> callee_segments(const std::string& callee) {
  std::vector<std::string> segs;
  std::string cur;
  int depth = 0;
  for (char c : callee) {
    if (c == '(' || c == '[') ++depth;
    else if (c == ')' || c == ']') { depth = std::max(0, depth - 1); continue; }
    if (depth > 0) continue;
    if (c == '.') {
      if (!cur.empty()) segs.push_back(cur);
      cur.clear();
      continue;
    }
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
      cur += c;
    }
  }
  if (!cur.empty()) segs.push_back(cur);
  return segs;
}

const FunctionInfo* function_named(const FileIR& ir, const std::string& name) {
  const FunctionInfo* found = nullptr;
  for (const FunctionInfo& func : ir.functions) {
    if (func.name == name) found = &func;  // last definition wins
  }
  return found;
}

// Path-like string literals in an operation rendering, normalized per D18.
std::vector<std::string> path_literals(const std::string& operation) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < operation.size()) {
    char c = operation[i];
    if (c != '\'' && c != '"' && c != '`') {
      ++i;
      continue;
    }
    char quote = c;
    std::size_t start = ++i;
    while (i < operation.size() && operation[i] != quote) {
      if (operation[i] == '\\') ++i;
      ++i;
    }
    std::string lit = operation.substr(start, i - start);
    if (i < operation.size()) ++i;

    while (lit.rfind("./", 0) == 0) lit = lit.substr(2);
    bool has_slash = lit.find('/') != std::string::npos;
    bool has_ext = false;
    std::size_t dot = lit.find_last_of('.');
    if (dot != std::string::npos && dot + 1 < lit.size() && lit.size() - dot - 1 <= 4) {
      has_ext = true;
      for (std::size_t k = dot + 1; k < lit.size(); ++k) {
        if (!std::isalnum(static_cast<unsigned char>(lit[k]))) has_ext = false;
      }
    }
    if (lit.size() >= 3 && (has_slash || has_ext)) out.push_back(lit);
  }
  return out;
}

// Directed completion: evidence from file i toward file j.
void complete_directed(const std::vector<SpgNode>& nodes_i, const FileIR& ir_i,
                       const std::vector<SpgNode>& nodes_j, const FileIR& ir_j,
                       const CrossEdgeCriteria& criteria, std::vector<SpgEdge>* out) {
  // Imports of i that resolve to file j.
  std::vector<ImportEntry> relevant;
  for (const ImportEntry& entry : ir_i.imports) {
    if (module_matches_file(entry.module, ir_j.file)) relevant.push_back(entry);
  }

  if (criteria.calls && !relevant.empty()) {
    for (const CallSite& cs : ir_i.call_sites) {
      std::vector<std::string> segs = callee_segments(cs.callee);
      if (segs.empty()) continue;
      const FunctionInfo* target = nullptr;
      for (const ImportEntry& entry : relevant) {
        if (segs.size() == 1 && entry.local == segs[0]) {
          target = function_named(ir_j, entry.symbol.empty() ? segs[0] : entry.symbol);
        } else if (segs.size() >= 2 && entry.local == segs[0] && entry.symbol.empty()) {
          target = function_named(ir_j, segs[1]);
        }
        if (target != nullptr) break;
      }
      if (target == nullptr || target->body_begin < 0) continue;

      for (const SpgNode& u : nodes_i) {
        if (enclosing_statement(ir_i, u.ir_node) != cs.stmt) continue;
        for (const SpgNode& v : nodes_j) {
          if (v.ir_node >= target->body_begin && v.ir_node <= target->body_end) {
            out->push_back({u.id, v.id, SpgEdgeKind::CrossCall});
          }
        }
      }
    }
  }

  if (criteria.imports && !relevant.empty()) {
    // Usage sites of imported locals in i.
    std::set<int> usage_nodes;
    std::set<std::string> locals;
    for (const ImportEntry& entry : relevant) {
      if (!entry.local.empty()) locals.insert(entry.local);
    }
    if (!locals.empty()) {
      for (const CallSite& cs : ir_i.call_sites) {
        std::vector<std::string> segs = callee_segments(cs.callee);
        if (!segs.empty() && locals.count(segs[0])) usage_nodes.insert(cs.node);
      }
      for (const IrNode& node : ir_i.nodes) {
        if (node.kind != IrKind::MemberAccess) continue;
        std::vector<std::string> segs = callee_segments(node.rendering);
        if (!segs.empty() && locals.count(segs[0])) usage_nodes.insert(node.id);
      }
    }

    std::vector<const SpgNode*> module_level;
    for (const SpgNode& v : nodes_j) {
      if (!v.enclosing_function.has_value()) module_level.push_back(&v);
    }

    if (!usage_nodes.empty() && !module_level.empty()) {
      // Flow between a node and a usage site runs either way: an imported
      // value feeding the node's arguments is the common shape.
      std::vector<ReachSet> usage_reach;
      usage_reach.reserve(usage_nodes.size());
      for (int usage : usage_nodes) usage_reach.push_back(bfs_reach(ir_i, usage, kFlowEdges));

      for (const SpgNode& u : nodes_i) {
        bool reaches = usage_nodes.count(u.ir_node) > 0;
        if (!reaches) {
          ReachSet reach = bfs_reach(ir_i, u.ir_node, kFlowEdges);
          for (int usage : usage_nodes) {
            if (std::binary_search(reach.reached.begin(), reach.reached.end(), usage)) {
              reaches = true;
              break;
            }
          }
        }
        if (!reaches) {
          for (const ReachSet& reach : usage_reach) {
            if (std::binary_search(reach.reached.begin(), reach.reached.end(),
                                   u.ir_node)) {
              reaches = true;
              break;
            }
          }
        }
        if (!reaches) continue;
        for (const SpgNode* v : module_level) {
          out->push_back({u.id, v->id, SpgEdgeKind::CrossImport});
        }
      }
    }
  }

  if (criteria.paths) {
    for (const SpgNode& u : nodes_i) {
      if (u.category != CategoryId::FileWrite) continue;
      std::vector<std::string> write_paths = path_literals(u.operation);
      if (write_paths.empty()) continue;
      for (const SpgNode& v : nodes_j) {
        if (v.category != CategoryId::FileRead) continue;
        std::vector<std::string> read_paths = path_literals(v.operation);
        bool shared = std::any_of(write_paths.begin(), write_paths.end(),
                                  [&](const std::string& w) {
                                    return std::find(read_paths.begin(), read_paths.end(),
                                                     w) != read_paths.end();
                                  });
        if (shared) out->push_back({u.id, v.id, SpgEdgeKind::CrossPath});
      }
    }
  }
}

}  // namespace

std::vector<SpgEdge> complete_cross_file_edges(const std::vector<SpgNode>& nodes_i,
                                               const FileIR& ir_i,
                                               const std::vector<SpgNode>& nodes_j,
                                               const FileIR& ir_j,
                                               const CrossEdgeCriteria& criteria) {
  std::vector<SpgEdge> out;
  complete_directed(nodes_i, ir_i, nodes_j, ir_j, criteria, &out);
  complete_directed(nodes_j, ir_j, nodes_i, ir_i, criteria, &out);
  return out;
}

// --- Skill-level build ---------------------------------------------------------

namespace {

std::string operation_pattern(const SpgNode& node) {
  std::size_t paren = node.operation.find('(');
  if (paren != std::string::npos) return node.operation.substr(0, paren) + "(...)";
  std::size_t bracket = node.operation.find('[');
  if (bracket != std::string::npos) return node.operation.substr(0, bracket) + "[...]";
  return node.operation;
}

void recompute_views(Spg* spg) {
  spg->per_file.clear();
  for (const SpgNode& node : spg->nodes) {
    spg->per_file[node.file].node_ids.push_back(node.id);
  }
  for (std::size_t e = 0; e < spg->edges.size(); ++e) {
    const SpgEdge& edge = spg->edges[e];
    if (edge.kind != SpgEdgeKind::IntraFlow) continue;
    const std::string& file = spg->nodes[static_cast<std::size_t>(edge.from)].file;
    spg->per_file[file].edge_ids.push_back(static_cast<int>(e));
  }
  spg->stats.nodes = static_cast<int>(spg->nodes.size());
  spg->stats.edges = static_cast<int>(spg->edges.size());
  std::set<std::string> ops;
  for (const SpgNode& node : spg->nodes) ops.insert(operation_pattern(node));
  spg->stats.distinct_operations = static_cast<int>(ops.size());
}

}  // namespace

bool Spg::structurally_equal(const Spg& other) const {
  // ir_node references and the derived views are in-memory only; the
  // serialized document is the structure.
  return serialize_spg(*this) == serialize_spg(other);
}

Spg build_skill_spg(const Skill& skill, const Taxonomy& taxonomy,
                    const BuildOptions& options) {
  struct Unit {
    FileIR ir;
    std::vector<SpgNode> nodes;
    std::vector<std::pair<std::size_t, std::size_t>> intra;
  };

  Spg spg;
  spg.skill_id = skill.id;
  for (const SkippedFile& skipped : skill.skipped) spg.skipped_files.push_back(skipped);

  std::vector<Unit> units;
  bool truncated = false;

  // Deterministic regardless of input order.
  std::vector<const ImplementationFile*> files;
  for (const ImplementationFile& file : skill.files) files.push_back(&file);
  std::sort(files.begin(), files.end(),
            [](const ImplementationFile* a, const ImplementationFile* b) {
              return a->path < b->path;
            });

  for (const ImplementationFile* file : files) {
    if (!is_analyzable(file->language)) continue;
    ++spg.analysis.files_seen;
    if (file->language == Language::Go) {
      spg.skipped_files.push_back({file->path, "unsupported language: Go"});
      continue;
    }
    Unit unit;
    unit.ir = analyze_file(*file);
    ++spg.analysis.files_analyzed;
    if (!unit.ir.parse_warnings.empty()) ++spg.analysis.files_with_warnings;
    unit.nodes = locate_security_nodes(unit.ir, taxonomy);
    unit.intra = discover_edges_bfs(unit.ir, unit.nodes, &truncated, options.bfs_limits);
    units.push_back(std::move(unit));
  }

  if (units.empty()) {
    throw ScopeError(Errc::AllFilesSkipped,
                     "no supported implementation file parsed for " + skill.id);
  }

  // Global ids by sorted (file, line, col, category).
  struct Slot {
    std::size_t unit;
    std::size_t index;
  };
  std::vector<Slot> slots;
  for (std::size_t u = 0; u < units.size(); ++u) {
    for (std::size_t n = 0; n < units[u].nodes.size(); ++n) slots.push_back({u, n});
  }
  std::sort(slots.begin(), slots.end(), [&](const Slot& a, const Slot& b) {
    const SpgNode& na = units[a.unit].nodes[a.index];
    const SpgNode& nb = units[b.unit].nodes[b.index];
    return std::tie(na.file, na.line, na.col) != std::tie(nb.file, nb.line, nb.col)
               ? std::tie(na.file, na.line, na.col) < std::tie(nb.file, nb.line, nb.col)
               : std::string(category_name(na.category)) < category_name(nb.category);
  });
  for (std::size_t id = 0; id < slots.size(); ++id) {
    units[slots[id].unit].nodes[slots[id].index].id = static_cast<int>(id);
  }
  spg.nodes.resize(slots.size());
  for (const Slot& slot : slots) {
    const SpgNode& node = units[slot.unit].nodes[slot.index];
    spg.nodes[static_cast<std::size_t>(node.id)] = node;
  }

  std::set<std::tuple<int, int, std::string>> edge_keys;
  auto push_edge = [&](const SpgEdge& edge) {
    if (edge.from == edge.to) return;
    if (edge_keys.insert({edge.from, edge.to, spg_edge_kind_name(edge.kind)}).second) {
      spg.edges.push_back(edge);
    }
  };

  for (const Unit& unit : units) {
    for (const auto& [u, v] : unit.intra) {
      push_edge({unit.nodes[u].id, unit.nodes[v].id, SpgEdgeKind::IntraFlow});
    }
  }
  for (std::size_t a = 0; a < units.size(); ++a) {
    for (std::size_t b = a + 1; b < units.size(); ++b) {
      for (const SpgEdge& edge :
           complete_cross_file_edges(units[a].nodes, units[a].ir, units[b].nodes,
                                     units[b].ir, options.criteria)) {
        push_edge(edge);
      }
    }
  }
  std::sort(spg.edges.begin(), spg.edges.end(), [](const SpgEdge& a, const SpgEdge& b) {
    return std::tie(a.from, a.to) != std::tie(b.from, b.to)
               ? std::tie(a.from, a.to) < std::tie(b.from, b.to)
               : std::string(spg_edge_kind_name(a.kind)) < spg_edge_kind_name(b.kind);
  });

  spg.stats.truncated = truncated;
  recompute_views(&spg);
  return spg;
}

}  // namespace skillscope
