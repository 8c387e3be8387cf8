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
#include <deque>
#include <map>
#include <set>
#include <string>

#include "ir_build.hpp"
#include "skillscope/errors.hpp"

namespace skillscope {

const char* ir_kind_name(IrKind kind) {
  switch (kind) {
    case IrKind::Statement: return "Statement";
    case IrKind::CallExpr: return "CallExpr";
    case IrKind::MemberAccess: return "MemberAccess";
    case IrKind::Assign: return "Assign";
    case IrKind::Param: return "Param";
    case IrKind::Literal: return "Literal";
    case IrKind::FunctionDef: return "FunctionDef";
    case IrKind::Other: return "Other";
  }
  return "?";
}

const IrNode& FileIR::node(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= nodes.size()) {
    throw ScopeError(Errc::UnknownNode, "node id " + std::to_string(id));
  }
  return nodes[static_cast<std::size_t>(id)];
}

namespace detail {

// --- Rendering ---------------------------------------------------------------

namespace {

constexpr std::size_t kLiteralLimit = 64;

std::string truncate_literal(const std::string& text) {
  if (text.size() <= kLiteralLimit) return text;
  char quote = text.empty() ? '\'' : text.back();
  std::string out = text.substr(0, kLiteralLimit - 4);
  out += "...";
  out += quote;
  return out;
}

bool is_word(const Tok& t) {
  return t.kind == Tok::K::Ident || t.kind == Tok::K::Keyword || t.kind == Tok::K::Num ||
         t.kind == Tok::K::Str;
}

}  // namespace

std::string render_tokens(const std::vector<Tok>& toks, std::size_t begin, std::size_t end,
                          bool python) {
  (void)python;
  std::string out;
  int paren_depth = 0;
  for (std::size_t i = begin; i < end && i < toks.size(); ++i) {
    const Tok& t = toks[i];
    std::string text = t.kind == Tok::K::Str ? truncate_literal(t.text) : t.text;

    bool space = false;
    if (!out.empty() && i > begin) {
      const Tok& p = toks[i - 1];
      const std::string& pt = p.text;
      if (is_word(p) && is_word(t)) {
        space = true;
      } else if (t.kind == Tok::K::Op) {
        const std::string& ct = text;
        if (ct == "(" ) {
          space = p.kind == Tok::K::Keyword;
        } else if (ct == ")" || ct == "]" || ct == "}" || ct == "," || ct == ";" ||
                   ct == "." || ct == ":" || ct == "[") {
          space = false;
          if (ct == "[" && (pt == "," || pt == ":" || pt == "=" || pt == "(" || pt == "[")) {
            space = pt != "(" && pt != "[";
          }
        } else if (ct == "=" && paren_depth > 0) {
          space = false;  // keyword argument
        } else {
          space = pt != "(" && pt != "[" && pt != "{" && pt != "." && pt != "@" &&
                  !(pt == "=" && paren_depth > 0) &&
                  !((pt == "-" || pt == "+" || pt == "*" || pt == "**" || pt == "!") &&
                    (i < 2 + begin || !is_word(toks[i - 2])));
        }
      } else {
        // Word after something.
        if (p.kind == Tok::K::Op) {
          const std::string& pt2 = p.text;
          if (pt2 == "(" || pt2 == "[" || pt2 == "." || pt2 == "@" || pt2 == "{") {
            space = false;
          } else if ((pt2 == "-" || pt2 == "+" || pt2 == "*" || pt2 == "**" || pt2 == "!") &&
                     (i < 2 + begin || !is_word(toks[i - 2]))) {
            space = false;  // unary
          } else if (pt2 == "=" && paren_depth > 0) {
            space = false;
          } else {
            space = true;
          }
        } else {
          space = true;
        }
      }
    }
    if (space) out += ' ';
    out += text;
    if (t.kind == Tok::K::Op) {
      if (t.text == "(") ++paren_depth;
      if (t.text == ")") --paren_depth;
    }
  }
  return out;
}

// --- Tree construction --------------------------------------------------------

namespace {

struct UseRec {
  std::string name;
  int attach = -1;
  int scope = 0;
};

struct DefRec {
  std::string name;
  int node = -1;
  int scope = 0;
};

struct ArgDetail {
  std::string kw;
  std::vector<int> value_nodes;
  std::vector<std::string> names;  // bare names used at this argument's top level
};

struct CallDetail {
  int node = -1;
  std::vector<std::string> segments;
  bool simple_callee = false;  // single-segment name invoked directly
  std::vector<ArgDetail> args;
  int scope = 0;
};

struct BuiltStmt {
  int node = -1;
  Flow flow = Flow::Seq;
  std::vector<std::vector<BuiltStmt>> blocks;
};

struct FuncRec {
  std::string name;
  int index = -1;  // into FileIR::functions
};

class TreeBuilder {
 public:
  TreeBuilder(FileIR* ir, bool python) : ir_(ir), python_(python) {}

  void run(std::vector<SemStmt>& top) {
    std::vector<BuiltStmt> built = build_block(top, 0, "");
    link_block(built, -1, -1, -1);
    wire_local_calls();
    finalize_def_use();
  }

 private:
  FileIR* ir_;
  bool python_ = false;
  int next_scope_ = 1;
  std::vector<UseRec> uses_;
  std::vector<DefRec> defs_;
  std::vector<CallDetail> calls_;
  std::map<std::string, int> function_by_name_;  // name -> index into functions
  std::set<std::uint64_t> edge_seen_;

  int add_node(IrKind kind, Span span, std::string rendering,
               const std::string& function) {
    IrNode node;
    node.id = static_cast<int>(ir_->nodes.size());
    node.kind = kind;
    node.span = span;
    node.rendering = std::move(rendering);
    if (!function.empty()) node.enclosing_function = function;
    ir_->nodes.push_back(std::move(node));
    return ir_->nodes.back().id;
  }

  void add_edge(int from, int to, IrEdgeKind kind) {
    if (from < 0 || to < 0 || from == to) return;
    std::uint64_t key = (static_cast<std::uint64_t>(from) << 34) |
                        (static_cast<std::uint64_t>(to) << 2) |
                        static_cast<std::uint64_t>(kind);
    if (!edge_seen_.insert(key).second) return;
    ir_->edges.push_back({from, to, kind});
  }

  static Span span_of(const std::vector<Tok>& toks, std::size_t begin, std::size_t end) {
    Span span;
    if (begin >= end || begin >= toks.size()) return span;
    const Tok& first = toks[begin];
    const Tok& last = toks[std::min(end, toks.size()) - 1];
    span.line_begin = first.line;
    span.col_begin = first.col;
    span.line_end = last.line;
    span.col_end = last.col + static_cast<int>(last.text.size());
    return span;
  }

  static std::vector<int> bracket_matches(const std::vector<Tok>& toks) {
    std::vector<int> match(toks.size(), -1);
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (toks[i].kind != Tok::K::Op) continue;
      const std::string& t = toks[i].text;
      if (t == "(" || t == "[" || t == "{") {
        stack.push_back(i);
      } else if (t == ")" || t == "]" || t == "}") {
        if (!stack.empty()) {
          match[stack.back()] = static_cast<int>(i);
          stack.pop_back();
        }
      }
    }
    return match;
  }

  // --- Expression scanning ---------------------------------------------------

  struct ScanEnv {
    const std::vector<Tok>* toks = nullptr;
    const std::vector<int>* match = nullptr;
    int stmt_node = -1;
    int scope = 0;
    std::string function;
  };

  int default_attach(const ScanEnv& env, int enclosing_call) const {
    return enclosing_call != -1 ? enclosing_call : env.stmt_node;
  }

  // Scans [begin,end); returns the value nodes created at this level.
  std::vector<int> scan_region(const ScanEnv& env, std::size_t begin, std::size_t end,
                               int enclosing_call, int ast_parent,
                               bool materialize_literal = false, bool object_keys = false) {
    const std::vector<Tok>& toks = *env.toks;
    const std::vector<int>& match = *env.match;
    std::vector<int> tops;

    // A lone string literal in argument position becomes a Literal node.
    if (materialize_literal && end - begin == 1 && toks[begin].kind == Tok::K::Str) {
      int lit = add_node(IrKind::Literal, span_of(toks, begin, end),
                         render_tokens(toks, begin, end, python_), env.function);
      add_edge(ast_parent, lit, IrEdgeKind::Ast);
      tops.push_back(lit);
      return tops;
    }

    std::size_t i = begin;
    while (i < end && i < toks.size()) {
      const Tok& t = toks[i];
      if (t.kind == Tok::K::Keyword) {
        if (python_ && t.text == "lambda") {
          // Skip the parameter list; the body is scanned as ordinary uses.
          while (i < end && !(toks[i].kind == Tok::K::Op && toks[i].text == ":")) ++i;
          if (i < end) ++i;
          continue;
        }
        ++i;
        continue;
      }
      if (t.kind == Tok::K::Ident) {
        // Arrow parameter: `x => ...` binds x instead of reading it.
        if (!python_ && i + 1 < end && toks[i + 1].kind == Tok::K::Op &&
            toks[i + 1].text == "=>") {
          i += 2;
          continue;
        }
        // Object literal key: `name: value` inside braces.
        if (object_keys && i + 1 < end && toks[i + 1].kind == Tok::K::Op &&
            toks[i + 1].text == ":") {
          i += 2;
          continue;
        }
        // Keyword argument name handled by the argument splitter; a bare
        // `name =` inside a call never reaches here.
        i = scan_chain(env, i, end, enclosing_call, ast_parent, &tops);
        continue;
      }
      if (t.kind == Tok::K::Op) {
        const std::string& text = t.text;
        if (text == "(" || text == "[" || text == "{") {
          int close = match[i];
          std::size_t stop = close < 0 ? end : std::min<std::size_t>(close, end);
          bool braces = text == "{";
          std::vector<int> inner =
              scan_region(env, i + 1, stop, enclosing_call, ast_parent, false,
                          braces && !python_);
          // Values feeding a grouped/subscripted/braced context flow to the
          // nearest consumer.
          for (int v : inner) add_edge(v, default_attach(env, enclosing_call), IrEdgeKind::Dfg);
          i = close < 0 ? end : static_cast<std::size_t>(close) + 1;
          continue;
        }
      }
      ++i;
    }
    return tops;
  }

  // Parses a dotted chain starting at an identifier. Returns the index after
  // the chain; appends the chain's value node (if any) to `tops`.
  std::size_t scan_chain(const ScanEnv& env, std::size_t start, std::size_t end,
                         int enclosing_call, int ast_parent, std::vector<int>* tops) {
    const std::vector<Tok>& toks = *env.toks;
    const std::vector<int>& match = *env.match;

    std::size_t i = start;
    std::vector<std::string> segments;
    std::string base_name;
    bool base_recorded = false;
    int value_node = -1;
    std::size_t chain_end = start;

    while (i < end && toks[i].kind == Tok::K::Ident) {
      segments.push_back(toks[i].text);
      if (segments.size() == 1) base_name = toks[i].text;
      ++i;
      chain_end = i;

      while (i < end && toks[i].kind == Tok::K::Op &&
             (toks[i].text == "(" || toks[i].text == "[")) {
        int close = match[i];
        std::size_t close_idx = close < 0 ? end : std::min<std::size_t>(close + 1, end);
        if (toks[i].text == "(") {
          // A call on the chain so far.
          int call = add_node(IrKind::CallExpr, span_of(toks, start, close_idx),
                              render_tokens(toks, start, close_idx, python_), env.function);
          add_edge(ast_parent, call, IrEdgeKind::Ast);

          CallDetail detail;
          detail.node = call;
          detail.segments = segments;
          detail.simple_callee = segments.size() == 1 && value_node == -1;
          detail.scope = env.scope;

          ir_->call_sites.push_back(
              {call, render_tokens(toks, start, i, python_), env.stmt_node});

          if (value_node != -1) {
            add_edge(value_node, call, IrEdgeKind::Dfg);  // chained call on a value
          } else if (!base_recorded && segments.size() > 1) {
            // Method call on a plain base name: the base flows into the call.
            uses_.push_back({base_name, call, env.scope});
            base_recorded = true;
          }

          scan_call_args(env, i, close_idx - 1, call, &detail);
          calls_.push_back(std::move(detail));
          value_node = call;
        } else {
          // Subscript: contents are ordinary uses feeding the chain's consumer.
          std::size_t stop = close < 0 ? end : std::min<std::size_t>(close, end);
          std::vector<int> inner = scan_region(env, i + 1, stop,
                                               value_node != -1 ? value_node : enclosing_call,
                                               ast_parent);
          for (int v : inner) {
            add_edge(v, value_node != -1 ? value_node : default_attach(env, enclosing_call),
                     IrEdgeKind::Dfg);
          }
        }
        i = close < 0 ? end : std::min<std::size_t>(close + 1, end);
        chain_end = i;
      }

      if (i + 1 < end && toks[i].kind == Tok::K::Op &&
          (toks[i].text == "." || toks[i].text == "?.") &&
          toks[i + 1].kind == Tok::K::Ident) {
        ++i;
        continue;
      }
      break;
    }

    if (value_node == -1) {
      if (segments.size() >= 2) {
        int member = add_node(IrKind::MemberAccess, span_of(toks, start, chain_end),
                              render_tokens(toks, start, chain_end, python_), env.function);
        add_edge(ast_parent, member, IrEdgeKind::Ast);
        uses_.push_back({base_name, member, env.scope});
        tops->push_back(member);
      } else if (segments.size() == 1) {
        uses_.push_back({base_name, default_attach(env, enclosing_call), env.scope});
      }
    } else {
      tops->push_back(value_node);
    }
    return chain_end;
  }

  // Splits `(args...)` at top-level commas; wires argument values into the call.
  void scan_call_args(const ScanEnv& env, std::size_t open, std::size_t close, int call,
                      CallDetail* detail) {
    const std::vector<Tok>& toks = *env.toks;
    const std::vector<int>& match = *env.match;
    std::vector<std::pair<std::size_t, std::size_t>> ranges;
    std::size_t arg_begin = open + 1;
    std::size_t i = open + 1;
    while (i < close) {
      const Tok& t = toks[i];
      if (t.kind == Tok::K::Op && (t.text == "(" || t.text == "[" || t.text == "{")) {
        int m = match[i];
        i = m < 0 ? close : static_cast<std::size_t>(m) + 1;
        continue;
      }
      if (t.kind == Tok::K::Op && t.text == ",") {
        ranges.emplace_back(arg_begin, i);
        arg_begin = i + 1;
      }
      ++i;
    }
    if (arg_begin < close) ranges.emplace_back(arg_begin, close);

    for (auto [begin, end] : ranges) {
      ArgDetail arg;
      // Python keyword argument: `name=value`.
      if (python_ && end - begin >= 2 && toks[begin].kind == Tok::K::Ident &&
          toks[begin + 1].kind == Tok::K::Op && toks[begin + 1].text == "=") {
        arg.kw = toks[begin].text;
        begin += 2;
      }
      std::size_t use_mark = uses_.size();
      std::vector<int> tops = scan_region(env, begin, end, call, call, true);
      for (int v : tops) add_edge(v, call, IrEdgeKind::Dfg);
      arg.value_nodes = tops;
      for (std::size_t u = use_mark; u < uses_.size(); ++u) {
        if (uses_[u].attach == call) arg.names.push_back(uses_[u].name);
      }
      detail->args.push_back(std::move(arg));
    }
  }

  // --- Statement construction ------------------------------------------------

  std::vector<BuiltStmt> build_block(std::vector<SemStmt>& stmts, int scope,
                                     const std::string& function) {
    std::vector<BuiltStmt> built;
    built.reserve(stmts.size());
    for (SemStmt& stmt : stmts) built.push_back(build_stmt(stmt, scope, function));
    return built;
  }

  BuiltStmt build_stmt(SemStmt& stmt, int scope, const std::string& function) {
    BuiltStmt out;
    out.flow = stmt.flow;

    Span span = span_of(stmt.tokens, 0, stmt.tokens.size());
    std::string rendering = render_tokens(stmt.tokens, 0, stmt.tokens.size(), python_);
    out.node = add_node(stmt.node_kind, span, rendering, function);
    if (!stmt.warning.empty()) ir_->parse_warnings.push_back(stmt.warning);

    for (const ImportEntry& entry : stmt.imports) ir_->imports.push_back(entry);

    int body_scope = scope;
    std::string body_function = function;
    FunctionInfo* func_info = nullptr;
    if (stmt.is_funcdef) {
      body_scope = next_scope_++;
      body_function = stmt.func_name;
      FunctionInfo info;
      info.name = stmt.func_name;
      info.def_node = out.node;
      ir_->functions.push_back(info);
      func_info = &ir_->functions.back();
      function_by_name_[stmt.func_name] = static_cast<int>(ir_->functions.size() - 1);
      for (const std::string& param : stmt.params) {
        Span pspan = span;
        pspan.line_end = pspan.line_begin;
        int pnode = add_node(IrKind::Param, pspan, param, stmt.func_name);
        add_edge(out.node, pnode, IrEdgeKind::Ast);
        func_info->param_nodes.push_back(pnode);
        func_info->param_names.push_back(param);
        defs_.push_back({param, pnode, body_scope});
      }
    }

    ScanEnv env;
    std::vector<int> match = bracket_matches(stmt.tokens);
    env.toks = &stmt.tokens;
    env.match = &match;
    env.stmt_node = out.node;
    env.scope = scope;
    env.function = function;

    for (const Region& region : stmt.value_regions) {
      std::vector<int> tops = scan_region(env, region.begin, region.end, -1, out.node);
      for (int v : tops) add_edge(v, out.node, IrEdgeKind::Dfg);
    }
    for (const Region& region : stmt.plain_regions) {
      scan_region(env, region.begin, region.end, -1, out.node);
    }
    for (const std::string& name : stmt.def_names) defs_.push_back({name, out.node, scope});
    for (const std::string& name : stmt.self_use_names) {
      uses_.push_back({name, out.node, scope});
    }
    if (stmt.flow == Flow::Return && !function.empty()) {
      // The innermost enclosing function is the most recently opened one with
      // this name.
      for (auto it = ir_->functions.rbegin(); it != ir_->functions.rend(); ++it) {
        if (it->name == function) {
          it->return_stmts.push_back(out.node);
          break;
        }
      }
    }

    int first_body_node = static_cast<int>(ir_->nodes.size());
    for (std::vector<SemStmt>& block : stmt.blocks) {
      std::vector<BuiltStmt> child = build_block(block, body_scope, body_function);
      for (const BuiltStmt& c : child) add_edge(out.node, c.node, IrEdgeKind::Ast);
      out.blocks.push_back(std::move(child));
    }
    if (func_info != nullptr) {
      int last = static_cast<int>(ir_->nodes.size()) - 1;
      // Re-resolve: build_block may have reallocated ir_->functions.
      FunctionInfo& info = ir_->functions[function_by_name_[stmt.func_name]];
      if (last >= first_body_node) {
        info.body_begin = first_body_node;
        info.body_end = last;
      }
    }
    return out;
  }

  // --- CFG -------------------------------------------------------------------

  static int entry_of(const std::vector<BuiltStmt>& block, int fallback) {
    return block.empty() ? fallback : block.front().node;
  }

  void link_block(std::vector<BuiltStmt>& block, int successor, int loop_header,
                  int loop_exit) {
    for (std::size_t i = 0; i < block.size(); ++i) {
      BuiltStmt& stmt = block[i];
      int next = successor;
      for (std::size_t j = i + 1; j < block.size(); ++j) {
        if (block[j].flow != Flow::Handler) {
          next = block[j].node;
          break;
        }
      }

      switch (stmt.flow) {
        case Flow::Seq: {
          if (!stmt.blocks.empty()) {
            add_edge(stmt.node, entry_of(stmt.blocks[0], next), IrEdgeKind::Cfg);
            link_block(stmt.blocks[0], next, loop_header, loop_exit);
            for (std::size_t b = 1; b < stmt.blocks.size(); ++b) {
              link_block(stmt.blocks[b], next, loop_header, loop_exit);
            }
          } else if (next != -1) {
            add_edge(stmt.node, next, IrEdgeKind::Cfg);
          }
          break;
        }
        case Flow::Branch: {
          std::vector<BuiltStmt>* then_block =
              stmt.blocks.empty() ? nullptr : &stmt.blocks[0];
          std::vector<BuiltStmt>* else_block =
              stmt.blocks.size() > 1 ? &stmt.blocks[1] : nullptr;
          if (then_block != nullptr) {
            add_edge(stmt.node, entry_of(*then_block, next), IrEdgeKind::Cfg);
            link_block(*then_block, next, loop_header, loop_exit);
          }
          if (else_block != nullptr) {
            add_edge(stmt.node, entry_of(*else_block, next), IrEdgeKind::Cfg);
            link_block(*else_block, next, loop_header, loop_exit);
          } else if (next != -1) {
            add_edge(stmt.node, next, IrEdgeKind::Cfg);
          }
          break;
        }
        case Flow::Loop: {
          if (!stmt.blocks.empty()) {
            add_edge(stmt.node, entry_of(stmt.blocks[0], next), IrEdgeKind::Cfg);
            link_block(stmt.blocks[0], stmt.node, stmt.node, next);
          }
          if (next != -1) add_edge(stmt.node, next, IrEdgeKind::Cfg);
          break;
        }
        case Flow::FuncDef: {
          if (next != -1) add_edge(stmt.node, next, IrEdgeKind::Cfg);
          if (!stmt.blocks.empty()) link_block(stmt.blocks[0], -1, -1, -1);
          break;
        }
        case Flow::Return:
        case Flow::Terminal:
          for (auto& b : stmt.blocks) link_block(b, next, loop_header, loop_exit);
          break;
        case Flow::Break:
          if (loop_exit != -1) add_edge(stmt.node, loop_exit, IrEdgeKind::Cfg);
          break;
        case Flow::Continue:
          if (loop_header != -1) add_edge(stmt.node, loop_header, IrEdgeKind::Cfg);
          break;
        case Flow::Handler: {
          if (!stmt.blocks.empty()) {
            add_edge(stmt.node, entry_of(stmt.blocks[0], -1), IrEdgeKind::Cfg);
            link_block(stmt.blocks[0], next, loop_header, loop_exit);
          }
          break;
        }
      }
    }
  }

  // --- Local call wiring (arguments to parameters, returns to call sites) -----

  void wire_local_calls() {
    for (const CallDetail& call : calls_) {
      if (!call.simple_callee) continue;
      auto it = function_by_name_.find(call.segments.front());
      if (it == function_by_name_.end()) continue;
      const FunctionInfo& func = ir_->functions[static_cast<std::size_t>(it->second)];

      for (std::size_t a = 0; a < call.args.size(); ++a) {
        const ArgDetail& arg = call.args[a];
        int param = -1;
        if (!arg.kw.empty()) {
          for (std::size_t p = 0; p < func.param_names.size(); ++p) {
            if (func.param_names[p] == arg.kw) param = func.param_nodes[p];
          }
        } else if (a < func.param_nodes.size()) {
          param = func.param_nodes[a];
        }
        if (param == -1) continue;
        for (int v : arg.value_nodes) add_edge(v, param, IrEdgeKind::Dfg);
        for (const std::string& name : arg.names) {
          uses_.push_back({name, param, call.scope});
        }
      }
      for (int ret : func.return_stmts) add_edge(ret, call.node, IrEdgeKind::Dfg);
    }
  }

  // --- Def-use ----------------------------------------------------------------

  void finalize_def_use() {
    std::map<std::pair<int, std::string>, std::vector<int>> by_scope_name;
    for (const DefRec& def : defs_) {
      by_scope_name[{def.scope, def.name}].push_back(def.node);
    }
    for (const UseRec& use : uses_) {
      auto it = by_scope_name.find({use.scope, use.name});
      if (it == by_scope_name.end()) continue;
      for (int def_node : it->second) add_edge(def_node, use.attach, IrEdgeKind::Dfg);
    }
  }
};

}  // namespace

FileIR build_ir_from_tree(const std::string& file, Language language,
                          std::vector<SemStmt> top_level,
                          std::vector<std::string> warnings, bool python) {
  FileIR ir;
  ir.file = file;
  ir.language = language;
  ir.parse_warnings = std::move(warnings);
  TreeBuilder builder(&ir, python);
  builder.run(top_level);
  return ir;
}

}  // namespace detail

// --- Reachability ---------------------------------------------------------

namespace {

std::vector<std::vector<int>> adjacency(const FileIR& ir, EdgeKindMask kinds) {
  std::vector<std::vector<int>> adj(ir.nodes.size());
  for (const IrEdge& edge : ir.edges) {
    bool take = (edge.kind == IrEdgeKind::Cfg && kinds.cfg) ||
                (edge.kind == IrEdgeKind::Dfg && kinds.dfg) ||
                (edge.kind == IrEdgeKind::Ast && kinds.ast);
    if (take) adj[static_cast<std::size_t>(edge.from)].push_back(edge.to);
  }
  return adj;
}

}  // namespace

ReachSet bfs_reach(const FileIR& ir, int from, EdgeKindMask kinds, const BfsLimits& limits) {
  ir.node(from);  // validates
  std::vector<std::vector<int>> adj = adjacency(ir, kinds);
  ReachSet result;
  std::vector<char> seen(ir.nodes.size(), 0);
  std::deque<std::pair<int, std::size_t>> queue;  // node, depth
  queue.emplace_back(from, 0);
  std::size_t visited = 0;
  while (!queue.empty()) {
    auto [node, depth] = queue.front();
    queue.pop_front();
    if (++visited > limits.max_visited || depth > limits.max_depth) {
      result.truncated = true;
      break;
    }
    for (int next : adj[static_cast<std::size_t>(node)]) {
      if (seen[static_cast<std::size_t>(next)]) continue;
      seen[static_cast<std::size_t>(next)] = 1;
      result.reached.push_back(next);
      queue.emplace_back(next, depth + 1);
    }
  }
  std::sort(result.reached.begin(), result.reached.end());
  return result;
}

bool reachable(const FileIR& ir, int from, int to, EdgeKindMask kinds) {
  ir.node(from);
  ir.node(to);
  ReachSet set = bfs_reach(ir, from, kinds);
  return std::binary_search(set.reached.begin(), set.reached.end(), to);
}

FileIR analyze_file(const ImplementationFile& file) {
  switch (file.language) {
    case Language::Python:
      return detail::analyze_python(file);
    case Language::JavaScript:
      return detail::analyze_js(file, false);
    case Language::TypeScript:
      return detail::analyze_js(file, true);
    case Language::Go:
    case Language::Other:
      throw ScopeError(Errc::UnsupportedLanguage,
                       std::string(language_name(file.language)) + ": " + file.path);
  }
  throw ScopeError(Errc::UnsupportedLanguage, file.path);
}

}  // namespace skillscope
