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
#include <string>

#include "ir_build.hpp"

namespace skillscope::detail {

namespace {

const std::set<std::string>& python_keywords() {
  static const std::set<std::string> kw = {
      "False",  "None",   "True",    "and",    "as",     "assert", "async",
      "await",  "break",  "class",   "continue", "def",  "del",    "elif",
      "else",   "except", "finally", "for",    "from",   "global", "if",
      "import", "in",     "is",      "lambda", "nonlocal", "not",  "or",
      "pass",   "raise",  "return",  "try",    "while",  "with",   "yield"};
  return kw;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

struct LogicalLine {
  int indent = 0;
  std::vector<Tok> toks;
  bool bad = false;
  int line = 1;  // first physical line
};

struct PyLexer {
  const std::string& src;
  std::size_t i = 0;
  int line = 1;
  int col = 1;
  std::vector<std::string>* warnings;

  explicit PyLexer(const std::string& text, std::vector<std::string>* warn)
      : src(text), warnings(warn) {}

  char peek(std::size_t ahead = 0) const {
    return i + ahead < src.size() ? src[i + ahead] : '\0';
  }
  void advance() {
    if (peek() == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++i;
  }

  bool string_prefix_at(std::size_t* length) const {
    std::size_t k = 0;
    while (k < 2 && i + k < src.size()) {
      char c = static_cast<char>(std::tolower(static_cast<unsigned char>(src[i + k])));
      if (c == 'r' || c == 'b' || c == 'u' || c == 'f') {
        ++k;
      } else {
        break;
      }
    }
    char q = peek(k);
    if (q == '\'' || q == '"') {
      *length = k;
      return true;
    }
    return false;
  }

  Tok lex_string(std::size_t prefix_len) {
    Tok tok;
    tok.kind = Tok::K::Str;
    tok.line = line;
    tok.col = col;
    std::size_t start = i;
    for (std::size_t k = 0; k < prefix_len; ++k) advance();
    char quote = peek();
    bool triple = peek(1) == quote && peek(2) == quote;
    advance();
    if (triple) {
      advance();
      advance();
      while (i < src.size()) {
        if (peek() == quote && peek(1) == quote && peek(2) == quote) {
          advance(); advance(); advance();
          break;
        }
        if (peek() == '\\') advance();
        advance();
      }
    } else {
      while (i < src.size() && peek() != quote && peek() != '\n') {
        if (peek() == '\\') advance();
        advance();
      }
      if (peek() == quote) advance();
    }
    tok.text = src.substr(start, i - start);
    return tok;
  }

  std::vector<LogicalLine> run() {
    std::vector<LogicalLine> lines;
    LogicalLine current;
    int depth = 0;
    bool at_line_start = true;
    bool line_has_content = false;

    auto flush = [&]() {
      if (!current.toks.empty()) {
        lines.push_back(current);
      }
      current = LogicalLine{};
      line_has_content = false;
      at_line_start = true;
    };

    while (i < src.size()) {
      char c = peek();
      if (at_line_start && depth == 0) {
        int indent = 0;
        while (peek() == ' ' || peek() == '\t') {
          indent += peek() == '\t' ? 4 : 1;
          advance();
        }
        if (peek() == '\n' || peek() == '#' || peek() == '\r' || i >= src.size()) {
          // blank or comment-only line
          while (i < src.size() && peek() != '\n') advance();
          if (i < src.size()) advance();
          continue;
        }
        current.indent = indent;
        current.line = line;
        at_line_start = false;
        line_has_content = true;
        continue;
      }
      c = peek();
      if (c == '\n') {
        if (depth > 0) {
          advance();
          continue;
        }
        advance();
        flush();
        continue;
      }
      if (c == '\\' && peek(1) == '\n') {
        advance();
        advance();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r') {
        advance();
        continue;
      }
      if (c == '#') {
        while (i < src.size() && peek() != '\n') advance();
        continue;
      }
      std::size_t prefix_len = 0;
      if ((c == '\'' || c == '"') || (is_ident_start(c) && string_prefix_at(&prefix_len))) {
        current.toks.push_back(lex_string(prefix_len));
        continue;
      }
      if (is_ident_start(c)) {
        Tok tok;
        tok.line = line;
        tok.col = col;
        std::size_t start = i;
        while (i < src.size() && is_ident_char(peek())) advance();
        tok.text = src.substr(start, i - start);
        tok.kind = python_keywords().count(tok.text) ? Tok::K::Keyword : Tok::K::Ident;
        current.toks.push_back(tok);
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Tok tok;
        tok.kind = Tok::K::Num;
        tok.line = line;
        tok.col = col;
        std::size_t start = i;
        while (i < src.size() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' ||
                peek() == '.')) {
          advance();
        }
        tok.text = src.substr(start, i - start);
        current.toks.push_back(tok);
        continue;
      }
      // Operators, longest match first.
      static const std::vector<std::string> ops = {
          "**=", "//=", ">>=", "<<=", "...", "->", ":=", "==", "!=", "<=", ">=",
          "+=",  "-=",  "*=",  "/=",  "%=",  "&=", "|=", "^=", "**", "//",
          "<<",  ">>"};
      bool matched = false;
      for (const std::string& op : ops) {
        if (src.compare(i, op.size(), op) == 0) {
          Tok tok{Tok::K::Op, op, line, col};
          current.toks.push_back(tok);
          for (std::size_t k = 0; k < op.size(); ++k) advance();
          matched = true;
          break;
        }
      }
      if (matched) continue;
      if (std::string("+-*/%<>=&|^~@.,:;()[]{}").find(c) != std::string::npos) {
        if (c == '(' || c == '[' || c == '{') ++depth;
        if (c == ')' || c == ']' || c == '}') depth = std::max(0, depth - 1);
        Tok tok{Tok::K::Op, std::string(1, c), line, col};
        current.toks.push_back(tok);
        advance();
        continue;
      }
      // Unknown character: keep it as an opaque token and mark the line.
      Tok tok{Tok::K::Op, std::string(1, c), line, col};
      current.toks.push_back(tok);
      current.bad = true;
      advance();
    }
    if (line_has_content) flush();
    return lines;
  }
};

// --- Statement classification ----------------------------------------------

enum class Marker { None, Elif, Else };

struct Classified {
  SemStmt stmt;
  Marker marker = Marker::None;
};

class PyParser {
 public:
  PyParser(std::vector<LogicalLine> lines, std::vector<std::string>* warnings)
      : lines_(std::move(lines)), warnings_(warnings) {}

  std::vector<SemStmt> parse() {
    std::size_t pos = 0;
    return parse_block(&pos, lines_.empty() ? 0 : lines_[0].indent);
  }

 private:
  std::vector<LogicalLine> lines_;
  std::vector<std::string>* warnings_;

  std::vector<SemStmt> parse_block(std::size_t* pos, int indent) {
    std::vector<Classified> out;
    while (*pos < lines_.size()) {
      const LogicalLine& line = lines_[*pos];
      if (line.indent < indent) break;
      if (line.indent > indent) {
        // Unexpected deep indent: attach to the previous statement when
        // possible, otherwise treat at this level with a warning.
        if (!out.empty() && !out.back().stmt.blocks.empty()) {
          // handled by block recursion below; should not normally happen
        }
        warnings_->push_back("unexpected indent at line " + std::to_string(line.line));
      }
      ++(*pos);
      std::vector<SemStmt> children;
      if (*pos < lines_.size() && lines_[*pos].indent > line.indent &&
          opens_block(line.toks)) {
        children = parse_block(pos, lines_[*pos].indent);
      }
      classify_line(line, std::move(children), &out);
    }
    return group_branches(std::move(out));
  }

  static bool opens_block(const std::vector<Tok>& toks) {
    int depth = 0;
    for (const Tok& t : toks) {
      if (t.kind != Tok::K::Op) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
      else if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
      else if (t.text == ":" && depth == 0) return true;
    }
    return false;
  }

  // Splits a token vector at top-level ';'.
  static std::vector<std::vector<Tok>> split_simple(const std::vector<Tok>& toks,
                                                    std::size_t begin, std::size_t end) {
    std::vector<std::vector<Tok>> parts;
    std::vector<Tok> cur;
    int depth = 0;
    for (std::size_t i = begin; i < end; ++i) {
      const Tok& t = toks[i];
      if (t.kind == Tok::K::Op) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
        if (t.text == ";" && depth == 0) {
          if (!cur.empty()) parts.push_back(std::move(cur));
          cur.clear();
          continue;
        }
      }
      cur.push_back(t);
    }
    if (!cur.empty()) parts.push_back(std::move(cur));
    return parts;
  }

  // Finds the ':' that terminates a compound-statement header, skipping
  // lambda bodies and bracketed regions.
  static std::size_t header_colon(const std::vector<Tok>& toks, std::size_t from) {
    int depth = 0;
    int lambda_pending = 0;
    for (std::size_t i = from; i < toks.size(); ++i) {
      const Tok& t = toks[i];
      if (t.kind == Tok::K::Keyword && t.text == "lambda") ++lambda_pending;
      if (t.kind != Tok::K::Op) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
      else if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
      else if (t.text == ":" && depth == 0) {
        if (lambda_pending > 0) {
          --lambda_pending;
          continue;
        }
        return i;
      }
    }
    return toks.size();
  }

  void classify_line(const LogicalLine& line, std::vector<SemStmt> children,
                     std::vector<Classified>* out) {
    const std::vector<Tok>& toks = line.toks;
    if (toks.empty()) return;

    if (line.bad) {
      Classified bad;
      bad.stmt.node_kind = IrKind::Other;
      bad.stmt.tokens = toks;
      bad.stmt.warning = "unparsable line " + std::to_string(line.line);
      if (!children.empty()) bad.stmt.blocks.push_back(std::move(children));
      out->push_back(std::move(bad));
      return;
    }

    std::size_t start = 0;
    bool is_async = toks[0].kind == Tok::K::Keyword && toks[0].text == "async";
    if (is_async && toks.size() > 1) start = 1;

    const Tok& head = toks[start];
    if (head.kind == Tok::K::Keyword && opens_block(toks)) {
      std::size_t colon = header_colon(toks, start);
      Classified c = classify_compound(line, toks, start, colon, std::move(children));
      // Inline suite after the colon.
      if (colon + 1 < toks.size()) {
        for (std::vector<Tok>& part : split_simple(toks, colon + 1, toks.size())) {
          LogicalLine inline_line;
          inline_line.indent = line.indent + 4;
          inline_line.line = line.line;
          inline_line.toks = std::move(part);
          std::vector<Classified> inline_out;
          classify_line(inline_line, {}, &inline_out);
          if (c.stmt.blocks.empty()) c.stmt.blocks.emplace_back();
          for (Classified& ic : inline_out) c.stmt.blocks[0].push_back(std::move(ic.stmt));
        }
      }
      out->push_back(std::move(c));
      return;
    }

    // One or more simple statements.
    for (std::vector<Tok>& part : split_simple(toks, 0, toks.size())) {
      out->push_back(classify_simple(line, std::move(part)));
    }
    // Children without an opening block header: already warned by indent
    // handling; attach to keep them analyzed.
    if (!children.empty() && !out->empty()) {
      out->back().stmt.blocks.push_back(std::move(children));
    }
  }

  Classified classify_compound(const LogicalLine& line, const std::vector<Tok>& toks,
                               std::size_t start, std::size_t colon,
                               std::vector<SemStmt> children) {
    Classified c;
    SemStmt& s = c.stmt;
    s.tokens.assign(toks.begin(), toks.begin() + static_cast<long>(colon) + 1);
    const std::string& word = toks[start].text;

    auto region = [&](std::size_t begin, std::size_t end) {
      Region r;
      r.begin = begin;
      r.end = std::min(end, s.tokens.size());
      return r;
    };

    if (word == "def") {
      s.node_kind = IrKind::FunctionDef;
      s.flow = Flow::FuncDef;
      s.is_funcdef = true;
      if (start + 1 < colon && toks[start + 1].kind == Tok::K::Ident) {
        s.func_name = toks[start + 1].text;
      }
      s.params = parse_params(toks, start + 2, colon);
    } else if (word == "class") {
      s.flow = Flow::Seq;
      if (start + 2 < colon) s.plain_regions.push_back(region(start + 2, colon));
    } else if (word == "if") {
      s.flow = Flow::Branch;
      s.plain_regions.push_back(region(start + 1, colon));
    } else if (word == "elif") {
      s.flow = Flow::Branch;
      s.plain_regions.push_back(region(start + 1, colon));
      c.marker = Marker::Elif;
    } else if (word == "else") {
      s.flow = Flow::Seq;
      c.marker = Marker::Else;
    } else if (word == "while") {
      s.flow = Flow::Loop;
      s.plain_regions.push_back(region(start + 1, colon));
    } else if (word == "for") {
      s.flow = Flow::Loop;
      std::size_t in_pos = colon;
      int depth = 0;
      for (std::size_t i = start + 1; i < colon; ++i) {
        const Tok& t = toks[i];
        if (t.kind == Tok::K::Op) {
          if (t.text == "(" || t.text == "[") ++depth;
          if (t.text == ")" || t.text == "]") --depth;
        }
        if (t.kind == Tok::K::Keyword && t.text == "in" && depth == 0) {
          in_pos = i;
          break;
        }
      }
      for (std::size_t i = start + 1; i < in_pos; ++i) {
        if (toks[i].kind == Tok::K::Ident) s.def_names.push_back(toks[i].text);
      }
      if (in_pos + 1 < colon) s.value_regions.push_back(region(in_pos + 1, colon));
    } else if (word == "with") {
      s.flow = Flow::Seq;
      parse_with_items(toks, start + 1, colon, &s);
    } else if (word == "try") {
      s.flow = Flow::Seq;
    } else if (word == "except") {
      s.flow = Flow::Handler;
      // `except E as name:` binds name.
      for (std::size_t i = start + 1; i + 1 < colon; ++i) {
        if (toks[i].kind == Tok::K::Keyword && toks[i].text == "as" &&
            toks[i + 1].kind == Tok::K::Ident) {
          s.def_names.push_back(toks[i + 1].text);
        }
      }
    } else if (word == "finally") {
      s.flow = Flow::Seq;
    } else {
      s.flow = Flow::Seq;
      s.plain_regions.push_back(region(start, colon));
    }
    if (!children.empty()) {
      s.blocks.push_back(std::move(children));
    } else if (s.blocks.empty()) {
      s.blocks.emplace_back();  // keeps block-opener semantics for CFG
    }
    (void)line;
    return c;
  }

  static std::vector<std::string> parse_params(const std::vector<Tok>& toks,
                                               std::size_t from, std::size_t colon) {
    std::vector<std::string> params;
    std::size_t i = from;
    if (i >= colon || toks[i].text != "(") return params;
    int depth = 0;
    bool expecting_name = true;
    for (; i < colon; ++i) {
      const Tok& t = toks[i];
      if (t.kind == Tok::K::Op) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        else if (t.text == ")" || t.text == "]" || t.text == "}") {
          --depth;
          if (depth == 0) break;
        } else if (t.text == "," && depth == 1) {
          expecting_name = true;
        }
        continue;
      }
      if (t.kind == Tok::K::Ident && expecting_name && depth == 1) {
        params.push_back(t.text);
        expecting_name = false;
      }
    }
    return params;
  }

  static void parse_with_items(const std::vector<Tok>& toks, std::size_t from,
                               std::size_t colon, SemStmt* s) {
    // Items separated by top-level commas: EXPR [as NAME]
    std::size_t item_begin = from;
    int depth = 0;
    auto close_item = [&](std::size_t end) {
      std::size_t expr_end = end;
      for (std::size_t i = item_begin; i + 1 < end; ++i) {
        if (toks[i].kind == Tok::K::Keyword && toks[i].text == "as" &&
            toks[i + 1].kind == Tok::K::Ident) {
          expr_end = i;
          s->def_names.push_back(toks[i + 1].text);
          break;
        }
      }
      if (expr_end > item_begin) {
        s->value_regions.push_back({item_begin, expr_end});
      }
    };
    std::size_t i = from;
    for (; i < colon; ++i) {
      const Tok& t = toks[i];
      if (t.kind != Tok::K::Op) continue;
      if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
      if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
      if (t.text == "," && depth == 0) {
        close_item(i);
        item_begin = i + 1;
      }
    }
    close_item(colon);
  }

  Classified classify_simple(const LogicalLine& line, std::vector<Tok> toks) {
    Classified c;
    SemStmt& s = c.stmt;
    s.tokens = std::move(toks);
    const std::vector<Tok>& t = s.tokens;
    if (t.empty()) return c;

    auto whole = [&](std::size_t from) { return Region{from, t.size()}; };

    if (t[0].kind == Tok::K::Keyword) {
      const std::string& word = t[0].text;
      if (word == "import") {
        parse_import(t, &s);
        return c;
      }
      if (word == "from") {
        parse_from_import(t, &s);
        return c;
      }
      if (word == "return") {
        s.flow = Flow::Return;
        if (t.size() > 1) s.value_regions.push_back(whole(1));
        return c;
      }
      if (word == "raise") {
        s.flow = Flow::Terminal;
        if (t.size() > 1) s.plain_regions.push_back(whole(1));
        return c;
      }
      if (word == "pass" || word == "global" || word == "nonlocal") return c;
      if (word == "break") {
        s.flow = Flow::Break;
        return c;
      }
      if (word == "continue") {
        s.flow = Flow::Continue;
        return c;
      }
      if (word == "assert" || word == "del" || word == "yield" || word == "await") {
        s.plain_regions.push_back(whole(1));
        return c;
      }
      // Unhandled keyword lead: scan what we can.
      s.plain_regions.push_back(whole(0));
      return c;
    }

    if (t[0].kind == Tok::K::Op && t[0].text == "@") {
      // Decorator: the expression is a call or name.
      if (t.size() > 1) s.plain_regions.push_back(whole(1));
      return c;
    }

    // Augmented assignment?
    static const std::set<std::string> aug = {"+=", "-=",  "*=",  "/=",  "//=", "%=",
                                              "**=", "&=", "|=",  "^=",  "<<=", ">>="};
    int depth = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Tok& tok = t[i];
      if (tok.kind != Tok::K::Op) continue;
      if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
      if (tok.text == ")" || tok.text == "]" || tok.text == "}") --depth;
      if (depth == 0 && aug.count(tok.text)) {
        s.node_kind = IrKind::Assign;
        collect_targets(t, 0, i, &s);
        for (const std::string& name : s.def_names) s.self_use_names.push_back(name);
        if (i + 1 < t.size()) s.value_regions.push_back(whole(i + 1));
        return c;
      }
    }

    // Plain assignment: split at top-level '='.
    std::vector<std::size_t> eqs;
    depth = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      const Tok& tok = t[i];
      if (tok.kind != Tok::K::Op) continue;
      if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
      if (tok.text == ")" || tok.text == "]" || tok.text == "}") --depth;
      if (depth == 0 && tok.text == "=") eqs.push_back(i);
    }
    if (!eqs.empty()) {
      s.node_kind = IrKind::Assign;
      std::size_t target_begin = 0;
      for (std::size_t eq : eqs) {
        collect_targets(t, target_begin, eq, &s);
        target_begin = eq + 1;
      }
      if (eqs.back() + 1 < t.size()) s.value_regions.push_back(whole(eqs.back() + 1));
      return c;
    }

    // Variable annotation without assignment (`x: int`) defines x.
    if (t.size() >= 3 && t[0].kind == Tok::K::Ident && t[1].kind == Tok::K::Op &&
        t[1].text == ":") {
      s.node_kind = IrKind::Assign;
      s.def_names.push_back(t[0].text);
      return c;
    }

    // Expression statement.
    s.plain_regions.push_back(whole(0));
    (void)line;
    return c;
  }

  // Collects definition targets from an assignment target region. Dotted or
  // subscripted targets define their base name; subscript contents are uses.
  void collect_targets(const std::vector<Tok>& t, std::size_t begin, std::size_t end,
                       SemStmt* s) {
    std::size_t i = begin;
    int depth = 0;
    bool chain_head = true;
    while (i < end) {
      const Tok& tok = t[i];
      if (tok.kind == Tok::K::Op) {
        if (tok.text == "(" ) { ++depth; ++i; continue; }
        if (tok.text == ")") { --depth; ++i; continue; }
        if (tok.text == "[") {
          // Subscript: scan contents as uses.
          int sub_depth = 1;
          std::size_t close = i + 1;
          while (close < end && sub_depth > 0) {
            if (t[close].kind == Tok::K::Op) {
              if (t[close].text == "[") ++sub_depth;
              if (t[close].text == "]") --sub_depth;
            }
            if (sub_depth == 0) break;
            ++close;
          }
          if (close > i + 1) s->plain_regions.push_back({i + 1, close});
          i = close + 1;
          continue;
        }
        if (tok.text == ",") { chain_head = true; ++i; continue; }
        if (tok.text == ".") {
          // Attribute target: skip the attribute name; base already defined.
          i += 2;
          continue;
        }
        ++i;
        continue;
      }
      if (tok.kind == Tok::K::Ident && chain_head) {
        s->def_names.push_back(tok.text);
        chain_head = false;
        ++i;
        continue;
      }
      ++i;
    }
  }

  static void parse_import(const std::vector<Tok>& t, SemStmt* s) {
    // import a.b.c as d, x
    std::size_t i = 1;
    while (i < t.size()) {
      std::string module;
      std::string first_segment;
      while (i < t.size() && t[i].kind == Tok::K::Ident) {
        if (module.empty()) first_segment = t[i].text;
        module += t[i].text;
        if (i + 1 < t.size() && t[i + 1].kind == Tok::K::Op && t[i + 1].text == ".") {
          module += '.';
          i += 2;
        } else {
          ++i;
          break;
        }
      }
      std::string local = first_segment;
      if (i < t.size() && t[i].kind == Tok::K::Keyword && t[i].text == "as" &&
          i + 1 < t.size()) {
        local = t[i + 1].text;
        i += 2;
      }
      if (!module.empty()) s->imports.push_back({local, module, ""});
      if (i < t.size() && t[i].kind == Tok::K::Op && t[i].text == ",") {
        ++i;
        continue;
      }
      break;
    }
  }

  static void parse_from_import(const std::vector<Tok>& t, SemStmt* s) {
    // from .mod.sub import x as y, z
    std::size_t i = 1;
    std::string module;
    while (i < t.size() && !(t[i].kind == Tok::K::Keyword && t[i].text == "import")) {
      module += t[i].text;
      ++i;
    }
    if (i >= t.size()) return;
    ++i;  // past 'import'
    while (i < t.size()) {
      if (t[i].kind == Tok::K::Op && t[i].text == "*") {
        s->imports.push_back({"", module, "*"});
        ++i;
        continue;
      }
      if (t[i].kind != Tok::K::Ident) {
        ++i;
        continue;
      }
      std::string symbol = t[i].text;
      std::string local = symbol;
      ++i;
      if (i + 1 < t.size() && t[i].kind == Tok::K::Keyword && t[i].text == "as") {
        local = t[i + 1].text;
        i += 2;
      }
      s->imports.push_back({local, module, symbol});
      if (i < t.size() && t[i].kind == Tok::K::Op && t[i].text == ",") ++i;
    }
  }

  std::vector<SemStmt> group_branches(std::vector<Classified> in) {
    std::vector<SemStmt> out;
    for (std::size_t i = 0; i < in.size(); ++i) {
      Classified& c = in[i];
      if (c.marker == Marker::None) {
        out.push_back(std::move(c.stmt));
        continue;
      }
      if (out.empty()) {
        c.stmt.warning = "orphan '" + std::string(c.marker == Marker::Elif ? "elif" : "else") +
                         "' clause";
        c.stmt.node_kind = IrKind::Other;
        out.push_back(std::move(c.stmt));
        continue;
      }
      SemStmt& prev = out.back();
      if (c.marker == Marker::Elif) {
        // An elif is an if-statement nested in the deepest else slot.
        SemStmt* anchor = find_branch_anchor(&prev);
        if (anchor == nullptr) {
          c.stmt.warning = "orphan 'elif' clause";
          c.stmt.node_kind = IrKind::Other;
          out.push_back(std::move(c.stmt));
          continue;
        }
        std::vector<SemStmt> wrapped;
        wrapped.push_back(std::move(c.stmt));
        anchor->blocks.push_back(std::move(wrapped));
      } else {
        SemStmt* anchor = find_branch_anchor(&prev);
        if (anchor != nullptr) {
          anchor->blocks.push_back(std::move(c.stmt.blocks.empty()
                                                 ? std::vector<SemStmt>{}
                                                 : std::move(c.stmt.blocks[0])));
        } else if (prev.flow == Flow::Loop || prev.flow == Flow::Seq) {
          // for/while/try ... else: runs after the construct.
          SemStmt follow;
          follow.flow = Flow::Seq;
          follow.tokens = std::move(c.stmt.tokens);
          if (!c.stmt.blocks.empty()) follow.blocks.push_back(std::move(c.stmt.blocks[0]));
          out.push_back(std::move(follow));
        } else {
          c.stmt.warning = "orphan 'else' clause";
          c.stmt.node_kind = IrKind::Other;
          out.push_back(std::move(c.stmt));
        }
      }
    }
    return out;
  }

  // The deepest Branch statement reachable through trailing else-blocks,
  // which still lacks an else block.
  static SemStmt* find_branch_anchor(SemStmt* stmt) {
    if (stmt->flow != Flow::Branch) return nullptr;
    while (true) {
      if (stmt->blocks.size() < 2) return stmt;
      std::vector<SemStmt>& else_block = stmt->blocks[1];
      if (else_block.size() == 1 && else_block[0].flow == Flow::Branch) {
        stmt = &else_block[0];
        continue;
      }
      return stmt;
    }
  }
};

}  // namespace

FileIR analyze_python(const ImplementationFile& file) {
  std::vector<std::string> warnings;
  PyLexer lexer(file.content, &warnings);
  std::vector<LogicalLine> lines = lexer.run();
  PyParser parser(std::move(lines), &warnings);
  std::vector<SemStmt> tree = parser.parse();
  return build_ir_from_tree(file.path, Language::Python, std::move(tree),
                            std::move(warnings), true);
}

}  // namespace skillscope::detail
