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

const std::set<std::string>& js_keywords() {
  static const std::set<std::string> kw = {
      "var",    "let",     "const",   "function", "return", "if",     "else",
      "for",    "while",   "do",      "break",    "continue", "new",  "delete",
      "typeof", "instanceof", "void", "in",       "of",     "try",    "catch",
      "finally", "throw",  "switch",  "case",     "default", "class", "extends",
      "super",  "import",  "export",  "from",     "as",     "async",  "await",
      "yield",  "this",    "null",    "true",     "false",  "undefined"};
  return kw;
}

bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

struct JsLexer {
  const std::string& src;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  explicit JsLexer(const std::string& text) : src(text) {}

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

  void consume_template() {
    // Inside `...`; handles ${...} interpolation and nested strings.
    while (i < src.size()) {
      char c = peek();
      if (c == '\\') {
        advance();
        if (i < src.size()) advance();
        continue;
      }
      if (c == '`') {
        advance();
        return;
      }
      if (c == '$' && peek(1) == '{') {
        advance();
        advance();
        int depth = 1;
        while (i < src.size() && depth > 0) {
          char d = peek();
          if (d == '\\') {
            advance();
            if (i < src.size()) advance();
            continue;
          }
          if (d == '\'' || d == '"') {
            char q = d;
            advance();
            while (i < src.size() && peek() != q) {
              if (peek() == '\\') advance();
              advance();
            }
            if (i < src.size()) advance();
            continue;
          }
          if (d == '{') ++depth;
          if (d == '}') --depth;
          advance();
        }
        continue;
      }
      advance();
    }
  }

  std::vector<Tok> run() {
    std::vector<Tok> toks;
    Tok::K prev_kind = Tok::K::Op;
    std::string prev_text;
    bool have_prev = false;

    auto regex_possible = [&]() {
      if (!have_prev) return true;
      if (prev_kind == Tok::K::Ident || prev_kind == Tok::K::Num ||
          prev_kind == Tok::K::Str) {
        return false;
      }
      if (prev_kind == Tok::K::Keyword) {
        return prev_text != "this" && prev_text != "true" && prev_text != "false" &&
               prev_text != "null" && prev_text != "undefined";
      }
      return prev_text != ")" && prev_text != "]";
    };

    while (i < src.size()) {
      char c = peek();
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance();
        continue;
      }
      if (c == '/' && peek(1) == '/') {
        while (i < src.size() && peek() != '\n') advance();
        continue;
      }
      if (c == '/' && peek(1) == '*') {
        advance();
        advance();
        while (i < src.size() && !(peek() == '*' && peek(1) == '/')) advance();
        if (i < src.size()) {
          advance();
          advance();
        }
        continue;
      }
      if (c == '\'' || c == '"' || c == '`') {
        Tok tok{Tok::K::Str, "", line, col};
        std::size_t start = i;
        char quote = c;
        advance();
        if (quote == '`') {
          consume_template();
        } else {
          while (i < src.size() && peek() != quote && peek() != '\n') {
            if (peek() == '\\') advance();
            advance();
          }
          if (i < src.size() && peek() == quote) advance();
        }
        tok.text = src.substr(start, i - start);
        toks.push_back(tok);
        prev_kind = Tok::K::Str;
        have_prev = true;
        continue;
      }
      if (c == '/' && regex_possible()) {
        Tok tok{Tok::K::Str, "", line, col};
        std::size_t start = i;
        advance();
        bool in_class = false;
        while (i < src.size() && (in_class || peek() != '/') && peek() != '\n') {
          if (peek() == '\\') advance();
          else if (peek() == '[') in_class = true;
          else if (peek() == ']') in_class = false;
          advance();
        }
        if (i < src.size() && peek() == '/') advance();
        while (i < src.size() && is_ident_char(peek())) advance();  // flags
        tok.text = src.substr(start, i - start);
        toks.push_back(tok);
        prev_kind = Tok::K::Str;
        have_prev = true;
        continue;
      }
      if (is_ident_start(c)) {
        Tok tok{Tok::K::Ident, "", line, col};
        std::size_t start = i;
        while (i < src.size() && is_ident_char(peek())) advance();
        tok.text = src.substr(start, i - start);
        if (js_keywords().count(tok.text)) tok.kind = Tok::K::Keyword;
        toks.push_back(tok);
        prev_kind = tok.kind;
        prev_text = tok.text;
        have_prev = true;
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        Tok tok{Tok::K::Num, "", line, col};
        std::size_t start = i;
        while (i < src.size() &&
               (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '.' ||
                peek() == '_')) {
          advance();
        }
        tok.text = src.substr(start, i - start);
        toks.push_back(tok);
        prev_kind = Tok::K::Num;
        have_prev = true;
        continue;
      }
      static const std::vector<std::string> ops = {
          ">>>=", "===", "!==", "**=", "...", "=>", "==", "!=", "<=", ">=", "&&",
          "||",   "??",  "?.",  "++",  "--",  "+=", "-=", "*=", "/=", "%=", "&=",
          "|=",   "^=",  "**",  "<<",  ">>"};
      bool matched = false;
      for (const std::string& op : ops) {
        if (src.compare(i, op.size(), op) == 0) {
          toks.push_back({Tok::K::Op, op, line, col});
          for (std::size_t k = 0; k < op.size(); ++k) advance();
          prev_kind = Tok::K::Op;
          prev_text = op;
          have_prev = true;
          matched = true;
          break;
        }
      }
      if (matched) continue;
      toks.push_back({Tok::K::Op, std::string(1, c), line, col});
      prev_kind = Tok::K::Op;
      prev_text = std::string(1, c);
      have_prev = true;
      advance();
    }
    return toks;
  }
};

// --- TypeScript stripping ----------------------------------------------------

std::size_t match_close(const std::vector<Tok>& toks, std::size_t open) {
  const std::string& open_text = toks[open].text;
  std::string close_text = open_text == "(" ? ")" : open_text == "[" ? "]" : "}";
  int depth = 0;
  for (std::size_t i = open; i < toks.size(); ++i) {
    if (toks[i].kind != Tok::K::Op) continue;
    if (toks[i].text == open_text) ++depth;
    if (toks[i].text == close_text) {
      --depth;
      if (depth == 0) return i;
    }
  }
  return toks.size();
}

// Consumes a type expression starting at `i`; returns the index after it.
std::size_t skip_type_expr(const std::vector<Tok>& toks, std::size_t i,
                           const std::set<std::string>& stops) {
  int angle = 0, paren = 0, bracket = 0, brace = 0;
  while (i < toks.size()) {
    const Tok& t = toks[i];
    if (angle == 0 && paren == 0 && bracket == 0 && brace == 0 &&
        t.kind == Tok::K::Op && stops.count(t.text)) {
      break;
    }
    if (t.kind == Tok::K::Op) {
      if (t.text == "<") ++angle;
      else if (t.text == ">") --angle;
      else if (t.text == "(") ++paren;
      else if (t.text == ")") {
        if (paren == 0) break;
        --paren;
      } else if (t.text == "[") ++bracket;
      else if (t.text == "]") --bracket;
      else if (t.text == "{") ++brace;
      else if (t.text == "}") {
        if (brace == 0) break;
        --brace;
      }
    }
    ++i;
  }
  return i;
}

}  // namespace

std::vector<Tok> strip_type_annotations(std::vector<Tok> toks,
                                        std::vector<std::string>* warnings) {
  std::vector<char> drop(toks.size(), 0);

  // Param lists: paren groups followed by `=>`, or after `function [name]`.
  std::vector<char> param_paren(toks.size(), 0);
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind != Tok::K::Op || toks[i].text != "(") continue;
    std::size_t close = match_close(toks, i);
    bool is_params = false;
    if (close + 1 < toks.size() && toks[close + 1].kind == Tok::K::Op &&
        toks[close + 1].text == "=>") {
      is_params = true;
    }
    // `(params): Type =>`: a return annotation sits before the arrow.
    if (!is_params && close + 1 < toks.size() && toks[close + 1].kind == Tok::K::Op &&
        toks[close + 1].text == ":") {
      std::size_t after = skip_type_expr(toks, close + 2, {"{", ";", "=>", ")", ","});
      if (after < toks.size() && toks[after].kind == Tok::K::Op &&
          toks[after].text == "=>") {
        is_params = true;
      }
    }
    if (i >= 1 && toks[i - 1].kind == Tok::K::Keyword && toks[i - 1].text == "function") {
      is_params = true;
    }
    if (i >= 2 && toks[i - 1].kind == Tok::K::Ident &&
        toks[i - 2].kind == Tok::K::Keyword && toks[i - 2].text == "function") {
      is_params = true;
    }
    if (is_params && close < toks.size()) {
      param_paren[i] = 1;
      param_paren[close] = 2;
    }
  }

  const std::set<std::string> param_stops = {",", ")", "="};
  const std::set<std::string> decl_stops = {"=", ";", ",", ")"};
  const std::set<std::string> ret_stops = {"{", ";", "=>", ")", ","};
  const std::set<std::string> as_stops = {")", "]", "}", ",", ";", ":"};

  int param_depth = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (drop[i]) continue;
    const Tok& t = toks[i];

    if (t.kind == Tok::K::Op && t.text == "(") {
      if (param_paren[i]) ++param_depth;
      continue;
    }
    if (t.kind == Tok::K::Op && t.text == ")") {
      if (param_paren[i] == 2 && param_depth > 0) {
        --param_depth;
        // Return-type annotation after the parameter list.
        if (i + 1 < toks.size() && toks[i + 1].kind == Tok::K::Op &&
            toks[i + 1].text == ":") {
          std::size_t end = skip_type_expr(toks, i + 2, ret_stops);
          for (std::size_t k = i + 1; k < end; ++k) drop[k] = 1;
        }
      }
      continue;
    }

    // Statement-level TypeScript constructs.
    if (t.kind == Tok::K::Ident &&
        (t.text == "interface" || t.text == "declare" || t.text == "enum" ||
         t.text == "namespace") &&
        i + 1 < toks.size() && toks[i + 1].kind == Tok::K::Ident) {
      std::size_t k = i;
      while (k < toks.size() && !(toks[k].kind == Tok::K::Op && toks[k].text == "{") &&
             !(toks[k].kind == Tok::K::Op && toks[k].text == ";")) {
        ++k;
      }
      std::size_t end = k;
      if (k < toks.size() && toks[k].text == "{") end = match_close(toks, k);
      for (std::size_t d = i; d <= end && d < toks.size(); ++d) drop[d] = 1;
      if (t.text == "enum" || t.text == "declare") {
        warnings->push_back("typescript '" + t.text + "' construct removed before analysis");
      }
      continue;
    }
    if (t.kind == Tok::K::Ident && t.text == "type" && i + 2 < toks.size() &&
        toks[i + 1].kind == Tok::K::Ident && toks[i + 2].kind == Tok::K::Op &&
        (toks[i + 2].text == "=" || toks[i + 2].text == "<")) {
      std::size_t k = i;
      while (k < toks.size() && !(toks[k].kind == Tok::K::Op && toks[k].text == ";")) {
        if (toks[k].kind == Tok::K::Op && toks[k].text == "{") {
          k = match_close(toks, k);
        }
        ++k;
      }
      for (std::size_t d = i; d <= k && d < toks.size(); ++d) drop[d] = 1;
      continue;
    }

    // Parameter visibility modifiers and optional markers.
    if (param_depth > 0 && t.kind == Tok::K::Ident &&
        (t.text == "public" || t.text == "private" || t.text == "protected" ||
         t.text == "readonly") &&
        i + 1 < toks.size() && toks[i + 1].kind == Tok::K::Ident) {
      drop[i] = 1;
      continue;
    }
    if (param_depth > 0 && t.kind == Tok::K::Op && t.text == "?" && i + 1 < toks.size() &&
        toks[i + 1].kind == Tok::K::Op && toks[i + 1].text == ":") {
      drop[i] = 1;
      continue;
    }

    // Annotations inside parameter lists.
    if (param_depth > 0 && t.kind == Tok::K::Op && t.text == ":") {
      std::size_t end = skip_type_expr(toks, i + 1, param_stops);
      for (std::size_t k = i; k < end; ++k) drop[k] = 1;
      continue;
    }

    // Variable annotations: const/let/var NAME : TYPE
    if (t.kind == Tok::K::Op && t.text == ":" && i >= 2 &&
        toks[i - 1].kind == Tok::K::Ident && toks[i - 2].kind == Tok::K::Keyword &&
        (toks[i - 2].text == "const" || toks[i - 2].text == "let" ||
         toks[i - 2].text == "var")) {
      std::size_t end = skip_type_expr(toks, i + 1, decl_stops);
      for (std::size_t k = i; k < end; ++k) drop[k] = 1;
      continue;
    }

    // `expr as Type` casts.
    if (t.kind == Tok::K::Keyword && t.text == "as" && i > 0 &&
        (toks[i - 1].kind == Tok::K::Ident || toks[i - 1].kind == Tok::K::Str ||
         (toks[i - 1].kind == Tok::K::Op &&
          (toks[i - 1].text == ")" || toks[i - 1].text == "]")))) {
      std::size_t end = skip_type_expr(toks, i + 1, as_stops);
      for (std::size_t k = i; k < end; ++k) drop[k] = 1;
      continue;
    }

    // Generic parameters on function declarations: function f<T>(...)
    if (t.kind == Tok::K::Op && t.text == "<" && i >= 1 &&
        toks[i - 1].kind == Tok::K::Ident && i >= 2 &&
        toks[i - 2].kind == Tok::K::Keyword && toks[i - 2].text == "function") {
      int angle = 0;
      std::size_t k = i;
      for (; k < toks.size() && k < i + 64; ++k) {
        if (toks[k].kind != Tok::K::Op) continue;
        if (toks[k].text == "<") ++angle;
        if (toks[k].text == ">") {
          --angle;
          if (angle == 0) break;
        }
      }
      if (angle == 0 && k < toks.size()) {
        for (std::size_t d = i; d <= k; ++d) drop[d] = 1;
      }
      continue;
    }

    // Non-null assertion `x!`.
    if (t.kind == Tok::K::Op && t.text == "!" && i > 0 &&
        (toks[i - 1].kind == Tok::K::Ident ||
         (toks[i - 1].kind == Tok::K::Op && toks[i - 1].text == ")")) &&
        i + 1 < toks.size() && toks[i + 1].kind == Tok::K::Op &&
        (toks[i + 1].text == "." || toks[i + 1].text == ")" || toks[i + 1].text == ";" ||
         toks[i + 1].text == ",")) {
      drop[i] = 1;
      continue;
    }
  }

  std::vector<Tok> out;
  out.reserve(toks.size());
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (!drop[i]) out.push_back(std::move(toks[i]));
  }
  return out;
}

// --- Statement parsing --------------------------------------------------------

namespace {

class JsParser {
 public:
  JsParser(std::vector<Tok> toks, std::vector<std::string>* warnings)
      : toks_(std::move(toks)), warnings_(warnings) {}

  std::vector<SemStmt> parse() { return parse_stmts(0, toks_.size()); }

 private:
  std::vector<Tok> toks_;
  std::vector<std::string>* warnings_;

  const Tok& at(std::size_t i) const { return toks_[i]; }
  bool is_op(std::size_t i, const char* text) const {
    return i < toks_.size() && toks_[i].kind == Tok::K::Op && toks_[i].text == text;
  }
  bool is_kw(std::size_t i, const char* text) const {
    return i < toks_.size() && toks_[i].kind == Tok::K::Keyword && toks_[i].text == text;
  }

  std::size_t close_of(std::size_t open, std::size_t end) const {
    const std::string& open_text = toks_[open].text;
    std::string close_text = open_text == "(" ? ")" : open_text == "[" ? "]" : "}";
    int depth = 0;
    for (std::size_t i = open; i < end; ++i) {
      if (toks_[i].kind != Tok::K::Op) continue;
      if (toks_[i].text == open_text) ++depth;
      if (toks_[i].text == close_text) {
        --depth;
        if (depth == 0) return i;
      }
    }
    return end;
  }

  // End of an expression statement: top-level ';' or an ASI newline break.
  std::size_t statement_end(std::size_t i, std::size_t end) const {
    int depth = 0;
    std::size_t k = i;
    for (; k < end; ++k) {
      const Tok& t = toks_[k];
      if (t.kind == Tok::K::Op) {
        if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
        if (t.text == ")" || t.text == "]" || t.text == "}") {
          if (depth == 0) return k;  // enclosing block closes
          --depth;
        }
        if (t.text == ";" && depth == 0) return k;
      }
      if (depth == 0 && k + 1 < end && toks_[k + 1].line > t.line) {
        // ASI: break when this token can end a statement and the next can
        // start one.
        bool can_end = t.kind == Tok::K::Ident || t.kind == Tok::K::Num ||
                       t.kind == Tok::K::Str ||
                       (t.kind == Tok::K::Op &&
                        (t.text == ")" || t.text == "]" || t.text == "}" ||
                         t.text == "++" || t.text == "--")) ||
                       (t.kind == Tok::K::Keyword &&
                        (t.text == "this" || t.text == "true" || t.text == "false" ||
                         t.text == "null" || t.text == "undefined" || t.text == "break" ||
                         t.text == "continue" || t.text == "return"));
        const Tok& n = toks_[k + 1];
        bool continues = (n.kind == Tok::K::Op &&
                          (n.text == "." || n.text == "(" || n.text == "[" ||
                           n.text == "+" || n.text == "-" || n.text == "*" ||
                           n.text == "/" || n.text == "=" || n.text == "=>" ||
                           n.text == "&&" || n.text == "||" || n.text == "?" ||
                           n.text == ":" || n.text == "," || n.text == "?.")) ||
                         (n.kind == Tok::K::Keyword &&
                          (n.text == "instanceof" || n.text == "in" || n.text == "of" ||
                           n.text == "as" || n.text == "extends"));
        if (can_end && !continues) return k + 1;
      }
    }
    return k;
  }

  std::vector<SemStmt> parse_stmts(std::size_t begin, std::size_t end) {
    std::vector<SemStmt> out;
    std::size_t i = begin;
    while (i < end) {
      i = parse_one(i, end, &out);
    }
    return out;
  }

  // Parses one statement starting at i; appends to out; returns next index.
  std::size_t parse_one(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    if (i >= end) return end;
    const Tok& t = toks_[i];

    if (t.kind == Tok::K::Op && t.text == ";") return i + 1;
    if (t.kind == Tok::K::Op && t.text == "{") {
      std::size_t close = close_of(i, end);
      std::vector<SemStmt> inner = parse_stmts(i + 1, close);
      for (SemStmt& s : inner) out->push_back(std::move(s));
      return close + 1;
    }

    if (t.kind == Tok::K::Keyword) {
      const std::string& word = t.text;
      if (word == "import") return parse_import(i, end, out);
      if (word == "export") {
        if (i + 1 < end && toks_[i + 1].kind == Tok::K::Keyword &&
            toks_[i + 1].text == "default") {
          return parse_one(i + 2, end, out);
        }
        // `export { a, b };` re-export lists carry no analysis value.
        if (is_op(i + 1, "{")) {
          std::size_t close = close_of(i + 1, end);
          std::size_t k = close + 1;
          if (is_kw(k, "from") && k + 1 < end) k += 2;
          if (is_op(k, ";")) ++k;
          return k;
        }
        return parse_one(i + 1, end, out);
      }
      if (word == "const" || word == "let" || word == "var") {
        return parse_declaration(i, end, out);
      }
      if (word == "function" || (word == "async" && is_kw(i + 1, "function"))) {
        return parse_function(word == "async" ? i + 1 : i, i, end, out);
      }
      if (word == "if") return parse_if(i, end, out);
      if (word == "for" || word == "while") return parse_loop(i, end, out);
      if (word == "do") return parse_do(i, end, out);
      if (word == "return" || word == "throw") {
        SemStmt s;
        s.flow = word == "return" ? Flow::Return : Flow::Terminal;
        std::size_t stop = statement_end(i + 1, end);
        s.tokens.assign(toks_.begin() + static_cast<long>(i),
                        toks_.begin() + static_cast<long>(stop));
        if (stop > i + 1) {
          Region r{1, s.tokens.size()};
          if (word == "return") s.value_regions.push_back(r);
          else s.plain_regions.push_back(r);
        }
        out->push_back(std::move(s));
        return is_op(stop, ";") ? stop + 1 : stop;
      }
      if (word == "break" || word == "continue") {
        SemStmt s;
        s.flow = word == "break" ? Flow::Break : Flow::Continue;
        s.tokens.push_back(t);
        out->push_back(std::move(s));
        std::size_t k = i + 1;
        if (k < end && toks_[k].kind == Tok::K::Ident) ++k;  // label
        if (is_op(k, ";")) ++k;
        return k;
      }
      if (word == "try") return parse_try(i, end, out);
      if (word == "class") return parse_class(i, end, out);
      if (word == "switch") return parse_switch(i, end, out);
      if (word == "async") return parse_one(i + 1, end, out);
    }

    // Expression statement or assignment.
    return parse_expression_statement(i, end, out);
  }

  std::size_t parse_import(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    std::size_t stop = statement_end(i + 1, end);
    SemStmt s;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(stop));

    // Find the module literal (after `from`, or directly for bare imports).
    std::string module;
    for (std::size_t k = s.tokens.size(); k > 0; --k) {
      if (s.tokens[k - 1].kind == Tok::K::Str) {
        module = s.tokens[k - 1].text;
        if (module.size() >= 2) module = module.substr(1, module.size() - 2);
        break;
      }
    }
    bool any = false;
    for (std::size_t k = 1; k < s.tokens.size(); ++k) {
      const Tok& tok = s.tokens[k];
      if (tok.kind == Tok::K::Keyword && tok.text == "from") break;
      if (tok.kind == Tok::K::Ident) {
        // `as` aliases bind the right-hand name.
        if (k + 2 < s.tokens.size() && s.tokens[k + 1].kind == Tok::K::Keyword &&
            s.tokens[k + 1].text == "as" && s.tokens[k + 2].kind == Tok::K::Ident) {
          s.imports.push_back({s.tokens[k + 2].text, module, tok.text});
          k += 2;
        } else {
          s.imports.push_back({tok.text, module, tok.text});
        }
        any = true;
      }
    }
    if (!any && !module.empty()) s.imports.push_back({"", module, ""});
    out->push_back(std::move(s));
    return is_op(stop, ";") ? stop + 1 : stop;
  }

  // const/let/var declarations, including require() imports and arrow
  // function bindings.
  std::size_t parse_declaration(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    std::size_t stop = statement_end(i + 1, end);
    std::size_t header_end = stop;

    // A `const f = (...) => {` or `= function(...) {` opens a block that
    // statement_end would treat as an expression; detect it first.
    std::size_t eq = end;
    int depth = 0;
    for (std::size_t k = i + 1; k < end; ++k) {
      const Tok& tok = toks_[k];
      if (tok.kind == Tok::K::Op) {
        if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
        if (tok.text == ")" || tok.text == "]" || tok.text == "}") {
          if (depth == 0) break;
          --depth;
        }
        if (tok.text == "=" && depth == 0) {
          eq = k;
          break;
        }
        if (tok.text == ";" && depth == 0) break;
      }
    }

    if (eq < end && i + 1 < eq && toks_[i + 1].kind == Tok::K::Ident) {
      const std::string name = toks_[i + 1].text;
      // Arrow function or function expression bound to a name.
      std::size_t b = eq + 1;
      if (is_kw(b, "async")) ++b;
      if (is_kw(b, "function")) {
        std::size_t fn_name = b + 1;
        std::size_t paren = is_op(fn_name, "(") ? fn_name : fn_name + 1;
        if (is_op(paren, "(")) {
          return parse_function_body(i, name, paren, end, out);
        }
      }
      if (is_op(b, "(")) {
        std::size_t close = close_of(b, end);
        if (is_op(close + 1, "=>")) {
          return parse_arrow(i, name, b, close, close + 1, end, out);
        }
      }
      if (b < end && toks_[b].kind == Tok::K::Ident && is_op(b + 1, "=>")) {
        return parse_arrow(i, name, b, b, b + 1, end, out);
      }
    }

    SemStmt s;
    s.node_kind = IrKind::Assign;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(header_end));

    // Declarators: NAME [= expr] (, NAME [= expr])*; destructuring binds
    // each inner name.
    int d = 0;
    bool in_target = true;
    std::size_t value_begin = 0;
    auto flush_value = [&](std::size_t until) {
      if (!in_target && value_begin < until) {
        s.value_regions.push_back({value_begin, until});
      }
    };
    for (std::size_t k = 1; k < s.tokens.size(); ++k) {
      const Tok& tok = s.tokens[k];
      if (tok.kind == Tok::K::Op) {
        if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++d;
        if (tok.text == ")" || tok.text == "]" || tok.text == "}") --d;
        if (tok.text == "=" && d == 0 && in_target) {
          in_target = false;
          value_begin = k + 1;
          continue;
        }
        if (tok.text == "," && d == 0) {
          flush_value(k);
          in_target = true;
          continue;
        }
      }
      if (in_target && tok.kind == Tok::K::Ident) {
        // Skips require/import idents on the value side; this is target side.
        s.def_names.push_back(tok.text);
      }
    }
    flush_value(s.tokens.size());

    // require('module') binding.
    for (std::size_t k = 1; k + 2 < s.tokens.size(); ++k) {
      if (s.tokens[k].kind == Tok::K::Ident && s.tokens[k].text == "require" &&
          s.tokens[k + 1].kind == Tok::K::Op && s.tokens[k + 1].text == "(" &&
          s.tokens[k + 2].kind == Tok::K::Str) {
        std::string module = s.tokens[k + 2].text;
        if (module.size() >= 2) module = module.substr(1, module.size() - 2);
        std::string local = s.def_names.empty() ? "" : s.def_names.front();
        s.imports.push_back({local, module, ""});
        break;
      }
    }

    out->push_back(std::move(s));
    return is_op(header_end, ";") ? header_end + 1 : header_end;
  }

  // function NAME(params) { body }; `decl_start` points at `function`.
  std::size_t parse_function(std::size_t fn, std::size_t stmt_start, std::size_t end,
                             std::vector<SemStmt>* out) {
    std::size_t name_idx = fn + 1;
    std::string name;
    std::size_t paren = name_idx;
    if (name_idx < end && toks_[name_idx].kind == Tok::K::Ident) {
      name = toks_[name_idx].text;
      paren = name_idx + 1;
    }
    if (!is_op(paren, "(")) return degrade(stmt_start, end, out, "function");
    return parse_function_body(stmt_start, name, paren, end, out);
  }

  std::size_t parse_function_body(std::size_t stmt_start, const std::string& name,
                                  std::size_t paren, std::size_t end,
                                  std::vector<SemStmt>* out) {
    std::size_t close = close_of(paren, end);
    std::size_t body_open = close + 1;
    if (!is_op(body_open, "{")) return degrade(stmt_start, end, out, "function body");
    std::size_t body_close = close_of(body_open, end);

    SemStmt s;
    s.node_kind = IrKind::FunctionDef;
    s.flow = Flow::FuncDef;
    s.is_funcdef = true;
    s.func_name = name;
    s.tokens.assign(toks_.begin() + static_cast<long>(stmt_start),
                    toks_.begin() + static_cast<long>(close) + 1);
    s.params = param_names(paren, close);
    s.blocks.push_back(parse_stmts(body_open + 1, body_close));
    out->push_back(std::move(s));
    return body_close + 1;
  }

  std::size_t parse_arrow(std::size_t stmt_start, const std::string& name,
                          std::size_t params_begin, std::size_t params_end,
                          std::size_t arrow, std::size_t end, std::vector<SemStmt>* out) {
    SemStmt s;
    s.node_kind = IrKind::FunctionDef;
    s.flow = Flow::FuncDef;
    s.is_funcdef = true;
    s.func_name = name;
    s.tokens.assign(toks_.begin() + static_cast<long>(stmt_start),
                    toks_.begin() + static_cast<long>(arrow) + 1);
    if (toks_[params_begin].kind == Tok::K::Ident) {
      s.params.push_back(toks_[params_begin].text);
    } else {
      s.params = param_names(params_begin, params_end);
    }

    std::size_t body = arrow + 1;
    if (is_op(body, "{")) {
      std::size_t body_close = close_of(body, end);
      s.blocks.push_back(parse_stmts(body + 1, body_close));
      out->push_back(std::move(s));
      std::size_t k = body_close + 1;
      return is_op(k, ";") ? k + 1 : k;
    }
    // Expression body behaves like a single return statement.
    std::size_t stop = statement_end(body, end);
    SemStmt ret;
    ret.flow = Flow::Return;
    ret.tokens.assign(toks_.begin() + static_cast<long>(body),
                      toks_.begin() + static_cast<long>(stop));
    if (!ret.tokens.empty()) ret.value_regions.push_back({0, ret.tokens.size()});
    std::vector<SemStmt> block;
    block.push_back(std::move(ret));
    s.blocks.push_back(std::move(block));
    out->push_back(std::move(s));
    return is_op(stop, ";") ? stop + 1 : stop;
  }

  std::vector<std::string> param_names(std::size_t open, std::size_t close) const {
    std::vector<std::string> params;
    int depth = 0;
    bool expecting = true;
    for (std::size_t k = open; k <= close && k < toks_.size(); ++k) {
      const Tok& tok = toks_[k];
      if (tok.kind == Tok::K::Op) {
        if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
        if (tok.text == ")" || tok.text == "]" || tok.text == "}") --depth;
        if (tok.text == "," && depth == 1) expecting = true;
        continue;
      }
      if (tok.kind == Tok::K::Ident && expecting && depth == 1) {
        params.push_back(tok.text);
        expecting = false;
      }
    }
    return params;
  }

  // if (cond) body [else ...]
  std::size_t parse_if(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    if (!is_op(i + 1, "(")) return degrade(i, end, out, "if");
    std::size_t cond_close = close_of(i + 1, end);

    SemStmt s;
    s.flow = Flow::Branch;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(cond_close) + 1);
    if (cond_close > i + 2) s.plain_regions.push_back({2, s.tokens.size() - 1});

    std::vector<SemStmt> then_block;
    std::size_t next = parse_embedded(cond_close + 1, end, &then_block);
    s.blocks.push_back(std::move(then_block));

    if (is_kw(next, "else")) {
      std::vector<SemStmt> else_block;
      next = parse_embedded(next + 1, end, &else_block);
      s.blocks.push_back(std::move(else_block));
    }
    out->push_back(std::move(s));
    return next;
  }

  std::size_t parse_loop(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    if (!is_op(i + 1, "(")) return degrade(i, end, out, toks_[i].text.c_str());
    std::size_t head_close = close_of(i + 1, end);

    SemStmt s;
    s.flow = Flow::Loop;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(head_close) + 1);

    // for (const x of expr) defines x and consumes expr; anything else is
    // scanned as-is (declared loop variables become defs).
    std::size_t of_pos = 0;
    for (std::size_t k = 2; k + 1 < s.tokens.size(); ++k) {
      if (s.tokens[k].kind == Tok::K::Keyword &&
          (s.tokens[k].text == "of" || s.tokens[k].text == "in")) {
        of_pos = k;
        break;
      }
    }
    if (of_pos != 0) {
      for (std::size_t k = 2; k < of_pos; ++k) {
        if (s.tokens[k].kind == Tok::K::Ident) s.def_names.push_back(s.tokens[k].text);
      }
      s.value_regions.push_back({of_pos + 1, s.tokens.size() - 1});
    } else {
      for (std::size_t k = 2; k + 1 < s.tokens.size(); ++k) {
        if (s.tokens[k].kind == Tok::K::Keyword &&
            (s.tokens[k].text == "const" || s.tokens[k].text == "let" ||
             s.tokens[k].text == "var") &&
            s.tokens[k + 1].kind == Tok::K::Ident) {
          s.def_names.push_back(s.tokens[k + 1].text);
        }
      }
      if (s.tokens.size() > 3) s.plain_regions.push_back({2, s.tokens.size() - 1});
    }

    std::vector<SemStmt> body;
    std::size_t next = parse_embedded(head_close + 1, end, &body);
    s.blocks.push_back(std::move(body));
    out->push_back(std::move(s));
    return next;
  }

  std::size_t parse_do(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    SemStmt s;
    s.flow = Flow::Loop;
    s.tokens.push_back(toks_[i]);
    std::vector<SemStmt> body;
    std::size_t next = parse_embedded(i + 1, end, &body);
    s.blocks.push_back(std::move(body));
    if (is_kw(next, "while") && is_op(next + 1, "(")) {
      std::size_t cond_close = close_of(next + 1, end);
      next = is_op(cond_close + 1, ";") ? cond_close + 2 : cond_close + 1;
    }
    out->push_back(std::move(s));
    return next;
  }

  std::size_t parse_try(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    SemStmt s;
    s.flow = Flow::Seq;
    s.tokens.push_back(toks_[i]);
    std::size_t next = i + 1;
    if (is_op(next, "{")) {
      std::size_t close = close_of(next, end);
      s.blocks.push_back(parse_stmts(next + 1, close));
      next = close + 1;
    }
    out->push_back(std::move(s));

    if (is_kw(next, "catch")) {
      SemStmt handler;
      handler.flow = Flow::Handler;
      handler.tokens.push_back(toks_[next]);
      std::size_t after = next + 1;
      if (is_op(after, "(")) {
        std::size_t close = close_of(after, end);
        for (std::size_t k = after + 1; k < close; ++k) {
          if (toks_[k].kind == Tok::K::Ident) handler.def_names.push_back(toks_[k].text);
        }
        after = close + 1;
      }
      if (is_op(after, "{")) {
        std::size_t close = close_of(after, end);
        handler.blocks.push_back(parse_stmts(after + 1, close));
        after = close + 1;
      }
      out->push_back(std::move(handler));
      next = after;
    }
    if (is_kw(next, "finally")) {
      SemStmt fin;
      fin.flow = Flow::Seq;
      fin.tokens.push_back(toks_[next]);
      std::size_t after = next + 1;
      if (is_op(after, "{")) {
        std::size_t close = close_of(after, end);
        fin.blocks.push_back(parse_stmts(after + 1, close));
        after = close + 1;
      }
      out->push_back(std::move(fin));
      next = after;
    }
    return next;
  }

  // Class bodies hold method syntax the statement grammar does not cover;
  // record the header and move on.
  std::size_t parse_class(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    std::size_t k = i;
    while (k < end && !is_op(k, "{")) ++k;
    SemStmt s;
    s.flow = Flow::Seq;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(std::min(k, end)));
    if (k < end) {
      std::size_t close = close_of(k, end);
      out->push_back(std::move(s));
      return close + 1;
    }
    out->push_back(std::move(s));
    return end;
  }

  std::size_t parse_switch(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    if (!is_op(i + 1, "(")) return degrade(i, end, out, "switch");
    std::size_t cond_close = close_of(i + 1, end);
    SemStmt s;
    s.flow = Flow::Seq;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(cond_close) + 1);
    if (cond_close > i + 2) s.plain_regions.push_back({2, s.tokens.size() - 1});
    std::size_t body = cond_close + 1;
    if (is_op(body, "{")) {
      std::size_t close = close_of(body, end);
      // Strip case labels; keep the statements.
      std::vector<SemStmt> block;
      std::size_t k = body + 1;
      while (k < close) {
        if (is_kw(k, "case")) {
          while (k < close && !is_op(k, ":")) ++k;
          ++k;
          continue;
        }
        if (is_kw(k, "default")) {
          k += 2;
          continue;
        }
        k = parse_one(k, close, &block);
      }
      s.blocks.push_back(std::move(block));
      out->push_back(std::move(s));
      return close + 1;
    }
    out->push_back(std::move(s));
    return body;
  }

  // A braced block or a single embedded statement (if/loop bodies).
  std::size_t parse_embedded(std::size_t i, std::size_t end, std::vector<SemStmt>* out) {
    if (is_op(i, "{")) {
      std::size_t close = close_of(i, end);
      *out = parse_stmts(i + 1, close);
      return close + 1;
    }
    return parse_one(i, end, out);
  }

  std::size_t parse_expression_statement(std::size_t i, std::size_t end,
                                         std::vector<SemStmt>* out) {
    std::size_t stop = statement_end(i, end);
    if (stop == i) {
      // Stray token (e.g. an unmatched closer): record and move past it.
      SemStmt s;
      s.node_kind = IrKind::Other;
      s.tokens.push_back(toks_[i]);
      s.warning = "unparsable token at line " + std::to_string(toks_[i].line);
      out->push_back(std::move(s));
      return i + 1;
    }

    SemStmt s;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(stop));

    static const std::set<std::string> aug = {"+=", "-=", "*=", "/=", "%=",
                                              "&=", "|=", "^=", "**="};
    int depth = 0;
    std::size_t assign_at = s.tokens.size();
    bool is_aug = false;
    for (std::size_t k = 0; k < s.tokens.size(); ++k) {
      const Tok& tok = s.tokens[k];
      if (tok.kind != Tok::K::Op) continue;
      if (tok.text == "(" || tok.text == "[" || tok.text == "{") ++depth;
      if (tok.text == ")" || tok.text == "]" || tok.text == "}") --depth;
      if (depth == 0 && (tok.text == "=" || aug.count(tok.text))) {
        assign_at = k;
        is_aug = aug.count(tok.text) > 0;
        break;
      }
    }

    if (assign_at < s.tokens.size()) {
      s.node_kind = IrKind::Assign;
      // Target: base name of the first chain.
      if (!s.tokens.empty() && s.tokens[0].kind == Tok::K::Ident) {
        s.def_names.push_back(s.tokens[0].text);
        if (is_aug) s.self_use_names.push_back(s.tokens[0].text);
      }
      // Subscript contents in the target are uses.
      for (std::size_t k = 0; k < assign_at; ++k) {
        if (s.tokens[k].kind == Tok::K::Op && s.tokens[k].text == "[") {
          std::size_t close = k + 1;
          int d2 = 1;
          while (close < assign_at && d2 > 0) {
            if (s.tokens[close].kind == Tok::K::Op) {
              if (s.tokens[close].text == "[") ++d2;
              if (s.tokens[close].text == "]") --d2;
            }
            if (d2 == 0) break;
            ++close;
          }
          if (close > k + 1) s.plain_regions.push_back({k + 1, close});
          k = close;
        }
      }
      if (assign_at + 1 < s.tokens.size()) {
        s.value_regions.push_back({assign_at + 1, s.tokens.size()});
      }
    } else {
      s.plain_regions.push_back({0, s.tokens.size()});
    }
    out->push_back(std::move(s));
    return is_op(stop, ";") ? stop + 1 : stop;
  }

  std::size_t degrade(std::size_t i, std::size_t end, std::vector<SemStmt>* out,
                      const char* what) {
    std::size_t stop = statement_end(i + 1, end);
    SemStmt s;
    s.node_kind = IrKind::Other;
    s.tokens.assign(toks_.begin() + static_cast<long>(i),
                    toks_.begin() + static_cast<long>(std::max(stop, i + 1)));
    s.warning = std::string("unparsable ") + what + " at line " +
                std::to_string(toks_[i].line);
    out->push_back(std::move(s));
    return std::max(stop, i + 1);
  }
};

}  // namespace

FileIR analyze_js(const ImplementationFile& file, bool typescript) {
  std::vector<std::string> warnings;
  JsLexer lexer(file.content);
  std::vector<Tok> toks = lexer.run();
  if (typescript) toks = strip_type_annotations(std::move(toks), &warnings);
  JsParser parser(std::move(toks), &warnings);
  std::vector<SemStmt> tree = parser.parse();
  return build_ir_from_tree(file.path, typescript ? Language::TypeScript : Language::JavaScript,
                            std::move(tree), std::move(warnings), false);
}

}  // namespace skillscope::detail
