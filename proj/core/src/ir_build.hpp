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

// Shared machinery behind the language frontends. A frontend tokenizes its
// input and produces a SemStmt tree; build_ir_from_tree turns that tree into
// the FileIR (nodes, AST/CFG/DFG edges, imports, call sites, functions).

#pragma once

#include <string>
#include <vector>

#include "skillscope/ir.hpp"

namespace skillscope::detail {

struct Tok {
  enum class K { Ident, Keyword, Num, Str, Op };
  K kind = K::Op;
  std::string text;  // verbatim; strings keep their quotes and prefixes
  int line = 1;
  int col = 1;
};

struct Region {
  std::size_t begin = 0;
  std::size_t end = 0;  // token index range [begin, end)
};

enum class Flow {
  Seq,       // plain statement; may carry one fall-through block (with, class)
  Branch,    // blocks: {then[, else]}
  Loop,      // blocks: {body}
  FuncDef,   // blocks: {body}; body is a separate CFG region
  Return,
  Break,
  Continue,
  Terminal,  // raise / throw
  Handler,   // except/catch: unreachable from the main chain (no exception edges)
};

struct SemStmt {
  IrKind node_kind = IrKind::Statement;
  Flow flow = Flow::Seq;
  std::vector<Tok> tokens;  // the statement's own tokens (header only for blocks)

  std::vector<Region> value_regions;  // consumed expressions: tops edge into the stmt
  std::vector<Region> plain_regions;  // scanned for uses and nested nodes only
  std::vector<std::string> def_names;      // simple names defined here
  std::vector<std::string> self_use_names; // names read by the stmt itself (aug-assign)

  bool is_funcdef = false;
  std::string func_name;
  std::vector<std::string> params;

  std::vector<ImportEntry> imports;
  std::vector<std::vector<SemStmt>> blocks;
  std::string warning;  // non-empty when this statement degraded to Other
};

/// D14 canonical rendering of a token range: single-space normalization,
/// compact call/member punctuation, string literals truncated at 64 chars.
std::string render_tokens(const std::vector<Tok>& toks, std::size_t begin, std::size_t end,
                          bool python);

FileIR build_ir_from_tree(const std::string& file, Language language,
                          std::vector<SemStmt> top_level,
                          std::vector<std::string> warnings, bool python);

// Frontends (ir_python.cpp / ir_js.cpp).
FileIR analyze_python(const ImplementationFile& file);
FileIR analyze_js(const ImplementationFile& file, bool typescript);

// TypeScript-to-JavaScript token filter (ir_js.cpp).
std::vector<Tok> strip_type_annotations(std::vector<Tok> toks,
                                        std::vector<std::string>* warnings);

}  // namespace skillscope::detail
