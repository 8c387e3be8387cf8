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
#include <string>

#include "gtest/gtest.h"
#include "skillscope/errors.hpp"
#include "skillscope/ir.hpp"

namespace skillscope {
namespace {

FileIR analyze_py(const std::string& content) {
  ImplementationFile file;
  file.path = "test.py";
  file.language = Language::Python;
  file.content = content;
  return analyze_file(file);
}

int find_node(const FileIR& ir, IrKind kind, const std::string& rendering_part) {
  for (const IrNode& node : ir.nodes) {
    if (node.kind == kind && node.rendering.find(rendering_part) != std::string::npos) {
      return node.id;
    }
  }
  return -1;
}

int count_edges(const FileIR& ir, IrEdgeKind kind) {
  int n = 0;
  for (const IrEdge& e : ir.edges) n += e.kind == kind ? 1 : 0;
  return n;
}

bool has_edge(const FileIR& ir, int from, int to, IrEdgeKind kind) {
  return std::any_of(ir.edges.begin(), ir.edges.end(), [&](const IrEdge& e) {
    return e.from == from && e.to == to && e.kind == kind;
  });
}

// Hand-derived def-use for the two-line snippet: the assignment defines
// `key`, whose only use sits inside the post call, and the getenv value
// feeds the assignment.
TEST(PythonIr, TwoLineDefUseChain) {
  FileIR ir = analyze_py(
      "key = os.getenv('API_KEY')\n"
      "requests.post(url, headers={'k': key})\n");

  int assign = find_node(ir, IrKind::Assign, "key = os.getenv");
  int getenv_call = find_node(ir, IrKind::CallExpr, "os.getenv('API_KEY')");
  int post_call = find_node(ir, IrKind::CallExpr, "requests.post(");
  ASSERT_NE(assign, -1);
  ASSERT_NE(getenv_call, -1);
  ASSERT_NE(post_call, -1);

  EXPECT_TRUE(has_edge(ir, assign, post_call, IrEdgeKind::Dfg));  // def -> use site
  EXPECT_TRUE(has_edge(ir, getenv_call, assign, IrEdgeKind::Dfg));  // value -> def
  EXPECT_TRUE(reachable(ir, getenv_call, post_call));
  EXPECT_FALSE(reachable(ir, post_call, getenv_call));
  EXPECT_TRUE(ir.parse_warnings.empty());
}

TEST(PythonIr, EmptyFile) {
  FileIR ir = analyze_py("");
  EXPECT_TRUE(ir.nodes.empty());
  EXPECT_TRUE(ir.edges.empty());
  EXPECT_TRUE(ir.parse_warnings.empty());
}

// Fixture derived by hand: three statements, the middle one unparsable.
// The bad line degrades to an Other node; control flow still bridges the
// valid statements through it.
TEST(PythonIr, UnparsableLineDegradesWithWarning) {
  FileIR ir = analyze_py(
      "a = 1\n"
      "@@ ??\n"
      "b = a\n");

  ASSERT_EQ(ir.parse_warnings.size(), 1u);
  int a_stmt = find_node(ir, IrKind::Assign, "a = 1");
  int other = -1;
  for (const IrNode& n : ir.nodes) {
    if (n.kind == IrKind::Other) other = n.id;
  }
  int b_stmt = find_node(ir, IrKind::Assign, "b = a");
  ASSERT_NE(a_stmt, -1);
  ASSERT_NE(other, -1);
  ASSERT_NE(b_stmt, -1);
  EXPECT_TRUE(has_edge(ir, a_stmt, other, IrEdgeKind::Cfg));
  EXPECT_TRUE(has_edge(ir, other, b_stmt, IrEdgeKind::Cfg));
  EXPECT_TRUE(reachable(ir, a_stmt, b_stmt, {true, false, false}));
  // The def-use edge from `a = 1` to its use in `b = a` is unaffected.
  EXPECT_TRUE(has_edge(ir, a_stmt, b_stmt, IrEdgeKind::Dfg));
}

TEST(PythonIr, StraightLineCfgHasNMinusOneEdges) {
  FileIR ir = analyze_py("a = 1\nb = 2\nc = 3\nd = 4\ne = 5\n");
  EXPECT_EQ(count_edges(ir, IrEdgeKind::Cfg), 4);
}

TEST(PythonIr, BranchAndLoopSuccessors) {
  FileIR ir = analyze_py(
      "x = 1\n"
      "if x:\n"
      "    y = 2\n"
      "else:\n"
      "    y = 3\n"
      "z = 4\n");
  int if_stmt = find_node(ir, IrKind::Statement, "if x");
  int then_stmt = find_node(ir, IrKind::Assign, "y = 2");
  int else_stmt = find_node(ir, IrKind::Assign, "y = 3");
  int after = find_node(ir, IrKind::Assign, "z = 4");
  ASSERT_NE(if_stmt, -1);
  EXPECT_TRUE(has_edge(ir, if_stmt, then_stmt, IrEdgeKind::Cfg));
  EXPECT_TRUE(has_edge(ir, if_stmt, else_stmt, IrEdgeKind::Cfg));
  EXPECT_TRUE(has_edge(ir, then_stmt, after, IrEdgeKind::Cfg));
  EXPECT_TRUE(has_edge(ir, else_stmt, after, IrEdgeKind::Cfg));

  FileIR loop = analyze_py(
      "for p in items:\n"
      "    body = p\n"
      "after = 1\n");
  int for_stmt = find_node(loop, IrKind::Statement, "for p in items");
  int body = find_node(loop, IrKind::Assign, "body = p");
  int after2 = find_node(loop, IrKind::Assign, "after = 1");
  EXPECT_TRUE(has_edge(loop, for_stmt, body, IrEdgeKind::Cfg));
  EXPECT_TRUE(has_edge(loop, body, for_stmt, IrEdgeKind::Cfg));  // back edge
  EXPECT_TRUE(has_edge(loop, for_stmt, after2, IrEdgeKind::Cfg));
  // The loop target is a def reaching uses in the body.
  EXPECT_TRUE(has_edge(loop, for_stmt, body, IrEdgeKind::Dfg));
}

TEST(PythonIr, AstForestRootedAtTopLevel) {
  FileIR ir = analyze_py(
      "def run(a):\n"
      "    b = helper(a)\n"
      "    return b\n"
      "x = run(1)\n");
  std::vector<int> parents(ir.nodes.size(), -1);
  for (const IrEdge& e : ir.edges) {
    if (e.kind != IrEdgeKind::Ast) continue;
    EXPECT_EQ(parents[static_cast<std::size_t>(e.to)], -1)
        << "node " << e.to << " has two AST parents";
    parents[static_cast<std::size_t>(e.to)] = e.from;
  }
  // Roots are statements.
  for (const IrNode& n : ir.nodes) {
    if (parents[static_cast<std::size_t>(n.id)] == -1) {
      EXPECT_TRUE(n.kind == IrKind::Statement || n.kind == IrKind::Assign ||
                  n.kind == IrKind::FunctionDef || n.kind == IrKind::Other)
          << "non-statement root " << n.rendering;
    }
  }
}

TEST(PythonIr, ImportsCollected) {
  FileIR ir = analyze_py(
      "import os\n"
      "import os.path as osp\n"
      "import json, sys\n"
      "from pathlib import Path\n"
      "from .helper import send as s2\n");
  ASSERT_EQ(ir.imports.size(), 6u);
  EXPECT_EQ(ir.imports[0].local, "os");
  EXPECT_EQ(ir.imports[0].module, "os");
  EXPECT_EQ(ir.imports[1].local, "osp");
  EXPECT_EQ(ir.imports[1].module, "os.path");
  EXPECT_EQ(ir.imports[2].local, "json");
  EXPECT_EQ(ir.imports[3].local, "sys");
  EXPECT_EQ(ir.imports[4].local, "Path");
  EXPECT_EQ(ir.imports[4].module, "pathlib");
  EXPECT_EQ(ir.imports[5].local, "s2");
  EXPECT_EQ(ir.imports[5].module, ".helper");
  EXPECT_EQ(ir.imports[5].symbol, "send");
}

// Argument values flow into a locally-defined function's parameters, and
// return expressions flow back to the call site.
TEST(PythonIr, LocalCallArgParamAndReturnWiring) {
  FileIR ir = analyze_py(
      "def double(v):\n"
      "    return v + v\n"
      "key = os.getenv('K')\n"
      "out = double(key)\n");

  int getenv_call = find_node(ir, IrKind::CallExpr, "os.getenv");
  int double_call = find_node(ir, IrKind::CallExpr, "double(key)");
  int out_assign = find_node(ir, IrKind::Assign, "out = double");
  ASSERT_NE(getenv_call, -1);
  ASSERT_NE(double_call, -1);

  ASSERT_EQ(ir.functions.size(), 1u);
  ASSERT_EQ(ir.functions[0].param_nodes.size(), 1u);
  int param = ir.functions[0].param_nodes[0];
  ASSERT_EQ(ir.functions[0].return_stmts.size(), 1u);
  int ret = ir.functions[0].return_stmts[0];

  EXPECT_TRUE(has_edge(ir, ret, double_call, IrEdgeKind::Dfg));
  // key def -> param (argument position), so getenv reaches the return path.
  EXPECT_TRUE(reachable(ir, getenv_call, param));
  EXPECT_TRUE(reachable(ir, getenv_call, double_call));
  EXPECT_TRUE(reachable(ir, getenv_call, out_assign));
}

TEST(PythonIr, WithAsAndMethodBaseFlow) {
  FileIR ir = analyze_py(
      "with open('data.txt') as fh:\n"
      "    text = json.load(fh)\n"
      "f = open('out.txt', 'w')\n"
      "f.write(text)\n");
  int open1 = find_node(ir, IrKind::CallExpr, "open('data.txt')");
  int load = find_node(ir, IrKind::CallExpr, "json.load(fh)");
  int open2 = find_node(ir, IrKind::CallExpr, "open('out.txt'");
  int write = find_node(ir, IrKind::CallExpr, "f.write(text)");
  ASSERT_NE(open1, -1);
  ASSERT_NE(load, -1);
  ASSERT_NE(open2, -1);
  ASSERT_NE(write, -1);
  EXPECT_TRUE(reachable(ir, open1, load));   // with-target def-use
  EXPECT_TRUE(reachable(ir, open2, write));  // method base name flow
  EXPECT_TRUE(reachable(ir, open1, write));  // text flows into the write call
  EXPECT_FALSE(reachable(ir, write, open1));
}

TEST(PythonIr, AugmentedAssignIsUseAndDef) {
  FileIR ir = analyze_py(
      "total = seed()\n"
      "total += 1\n"
      "sink(total)\n");
  int first = find_node(ir, IrKind::Assign, "total = seed()");
  int aug = find_node(ir, IrKind::Assign, "total += 1");
  int sink = find_node(ir, IrKind::CallExpr, "sink(total)");
  EXPECT_TRUE(has_edge(ir, first, aug, IrEdgeKind::Dfg));
  EXPECT_TRUE(has_edge(ir, aug, sink, IrEdgeKind::Dfg));
}

TEST(PythonIr, RenderingNormalizesWhitespaceAndTruncatesLiterals) {
  FileIR ir = analyze_py("x   =  os.getenv(  'API_KEY'  )\n");
  int call = find_node(ir, IrKind::CallExpr, "os.getenv");
  ASSERT_NE(call, -1);
  EXPECT_EQ(ir.node(call).rendering, "os.getenv('API_KEY')");

  std::string longlit(100, 'a');
  FileIR ir2 = analyze_py("y = t('" + longlit + "')\n");
  int call2 = find_node(ir2, IrKind::CallExpr, "t(");
  ASSERT_NE(call2, -1);
  EXPECT_NE(ir2.node(call2).rendering.find("..."), std::string::npos);
  EXPECT_LT(ir2.node(call2).rendering.size(), 80u);
}

TEST(PythonIr, EnclosingFunctionAndCallSites) {
  FileIR ir = analyze_py(
      "def outer():\n"
      "    os.getenv('K')\n"
      "os.getenv('M')\n");
  int inner = find_node(ir, IrKind::CallExpr, "os.getenv('K')");
  int module_level = find_node(ir, IrKind::CallExpr, "os.getenv('M')");
  ASSERT_NE(inner, -1);
  ASSERT_NE(module_level, -1);
  EXPECT_EQ(ir.node(inner).enclosing_function, std::optional<std::string>("outer"));
  EXPECT_FALSE(ir.node(module_level).enclosing_function.has_value());

  // Every CallExpr node appears in call_sites.
  for (const IrNode& n : ir.nodes) {
    if (n.kind != IrKind::CallExpr) continue;
    bool found = std::any_of(ir.call_sites.begin(), ir.call_sites.end(),
                             [&](const CallSite& cs) { return cs.node == n.id; });
    EXPECT_TRUE(found) << n.rendering;
  }
}

TEST(PythonIr, DeterministicNodeAndEdgeCounts) {
  const std::string source =
      "import os\n"
      "def go(p):\n"
      "    data = open(p).read()\n"
      "    if data:\n"
      "        requests.post(url, data=data)\n"
      "    return data\n";
  FileIR a = analyze_py(source);
  FileIR b = analyze_py(source);
  EXPECT_EQ(a.nodes.size(), b.nodes.size());
  EXPECT_EQ(a.edges.size(), b.edges.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    EXPECT_EQ(a.nodes[i].rendering, b.nodes[i].rendering);
  }
}

TEST(PythonIr, DecoratorCreatesCallNode) {
  FileIR ir = analyze_py(
      "@app.route('/health')\n"
      "def health():\n"
      "    return 'ok'\n");
  EXPECT_NE(find_node(ir, IrKind::CallExpr, "app.route('/health')"), -1);
}

TEST(PythonIr, StringContentNeverBecomesCall) {
  FileIR ir = analyze_py("msg = 'call open( here'\n");
  for (const IrNode& n : ir.nodes) {
    EXPECT_NE(n.kind, IrKind::CallExpr) << n.rendering;
  }
}

TEST(AnalyzeFile, UnsupportedLanguages) {
  ImplementationFile go_file{"main.go", Language::Go, "package main\n"};
  try {
    analyze_file(go_file);
    FAIL() << "expected UnsupportedLanguage";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::UnsupportedLanguage);
  }
  ImplementationFile other{"notes.txt", Language::Other, "text\n"};
  EXPECT_THROW(analyze_file(other), ScopeError);
}

}  // namespace
}  // namespace skillscope
