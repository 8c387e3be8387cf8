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
#include "skillscope/ir.hpp"

namespace skillscope {
namespace {

FileIR analyze(const std::string& content, Language lang = Language::JavaScript) {
  ImplementationFile file;
  file.path = lang == Language::TypeScript ? "test.ts" : "test.js";
  file.language = lang;
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

TEST(JsIr, RequireAndEnvFlowIntoFetch) {
  FileIR ir = analyze(
      "const fs = require('fs');\n"
      "const token = process.env.SERVICE_TOKEN;\n"
      "fetch(url, { headers: { Authorization: token } });\n");

  ASSERT_EQ(ir.imports.size(), 1u);
  EXPECT_EQ(ir.imports[0].local, "fs");
  EXPECT_EQ(ir.imports[0].module, "fs");

  int env = find_node(ir, IrKind::MemberAccess, "process.env.SERVICE_TOKEN");
  int fetch_call = find_node(ir, IrKind::CallExpr, "fetch(");
  ASSERT_NE(env, -1);
  ASSERT_NE(fetch_call, -1);
  EXPECT_TRUE(reachable(ir, env, fetch_call));
  EXPECT_FALSE(reachable(ir, fetch_call, env));
}

TEST(JsIr, ImportForms) {
  FileIR ir = analyze(
      "import fs from 'fs';\n"
      "import { readFile, writeFile as wf } from 'node:fs';\n"
      "import * as path from 'path';\n"
      "import './side_effect.js';\n");
  ASSERT_EQ(ir.imports.size(), 5u);
  EXPECT_EQ(ir.imports[0].local, "fs");
  EXPECT_EQ(ir.imports[1].local, "readFile");
  EXPECT_EQ(ir.imports[2].local, "wf");
  EXPECT_EQ(ir.imports[2].symbol, "writeFile");
  EXPECT_EQ(ir.imports[3].local, "path");
  EXPECT_EQ(ir.imports[4].local, "");
  EXPECT_EQ(ir.imports[4].module, "./side_effect.js");
}

TEST(JsIr, FunctionDeclarationAndArrowBinding) {
  FileIR ir = analyze(
      "function send(token) {\n"
      "  return fetch('https://h.example/api/up', { headers: { t: token } });\n"
      "}\n"
      "const relay = (data) => send(data);\n"
      "const key = process.env.API_KEY;\n"
      "relay(key);\n");

  ASSERT_EQ(ir.functions.size(), 2u);
  EXPECT_EQ(ir.functions[0].name, "send");
  EXPECT_EQ(ir.functions[1].name, "relay");
  ASSERT_EQ(ir.functions[0].param_names.size(), 1u);
  EXPECT_EQ(ir.functions[0].param_names[0], "token");

  int env = find_node(ir, IrKind::MemberAccess, "process.env.API_KEY");
  int fetch_call = find_node(ir, IrKind::CallExpr, "fetch(");
  ASSERT_NE(env, -1);
  ASSERT_NE(fetch_call, -1);
  // key -> relay param -> send(data) -> send param -> fetch use
  EXPECT_TRUE(reachable(ir, env, fetch_call));
}

TEST(JsIr, ControlFlowShapes) {
  FileIR ir = analyze(
      "let a = 1;\n"
      "if (a) {\n"
      "  a = 2;\n"
      "} else {\n"
      "  a = 3;\n"
      "}\n"
      "for (const x of items) {\n"
      "  use(x);\n"
      "}\n"
      "while (a) { a = step(a); }\n");
  int if_stmt = find_node(ir, IrKind::Statement, "if (a)");
  int loop = find_node(ir, IrKind::Statement, "for (const x of items)");
  ASSERT_NE(if_stmt, -1);
  ASSERT_NE(loop, -1);
  int use_call = find_node(ir, IrKind::CallExpr, "use(x)");
  ASSERT_NE(use_call, -1);
  // The for-of target is a def reaching the body use.
  bool loop_def_use = std::any_of(ir.edges.begin(), ir.edges.end(), [&](const IrEdge& e) {
    return e.from == loop && e.to == use_call && e.kind == IrEdgeKind::Dfg;
  });
  EXPECT_TRUE(loop_def_use);
}

TEST(JsIr, TemplateLiteralsAndRegexDoNotConfuseParser) {
  FileIR ir = analyze(
      "const msg = `use fetch( and ${name} here`;\n"
      "const re = /fetch\\(/g;\n"
      "const ratio = total / count;\n");
  for (const IrNode& n : ir.nodes) {
    EXPECT_NE(n.kind, IrKind::CallExpr) << n.rendering;
  }
  EXPECT_TRUE(ir.parse_warnings.empty());
}

TEST(JsIr, AsiBreaksStatementsWithoutSemicolons) {
  FileIR ir = analyze(
      "const a = load()\n"
      "const b = a\n"
      "store(b)\n");
  int load_call = find_node(ir, IrKind::CallExpr, "load()");
  int store_call = find_node(ir, IrKind::CallExpr, "store(b)");
  ASSERT_NE(load_call, -1);
  ASSERT_NE(store_call, -1);
  EXPECT_TRUE(reachable(ir, load_call, store_call));
}

TEST(JsIr, TryCatchHasNoExceptionEdges) {
  FileIR ir = analyze(
      "try {\n"
      "  risky();\n"
      "} catch (err) {\n"
      "  report(err);\n"
      "}\n"
      "done();\n");
  int risky = find_node(ir, IrKind::CallExpr, "risky()");
  int report = find_node(ir, IrKind::CallExpr, "report(err)");
  int risky_stmt = find_node(ir, IrKind::Statement, "risky");
  ASSERT_NE(risky, -1);
  ASSERT_NE(report, -1);
  EXPECT_FALSE(reachable(ir, risky_stmt, report, {true, true, false}));
}

TEST(TsIr, TypeAnnotationsStripped) {
  FileIR ir = analyze(
      "interface Config { url: string; retries: number; }\n"
      "type Mode = 'fast' | 'slow';\n"
      "function send(token: string, tries: number = 2): Promise<void> {\n"
      "  return fetch('https://svc.example/api/send', { headers: { t: token } });\n"
      "}\n"
      "const key: string = process.env.API_KEY as string;\n"
      "send(key, 1);\n",
      Language::TypeScript);

  ASSERT_EQ(ir.functions.size(), 1u);
  ASSERT_EQ(ir.functions[0].param_names.size(), 2u);
  EXPECT_EQ(ir.functions[0].param_names[0], "token");
  EXPECT_EQ(ir.functions[0].param_names[1], "tries");

  int env = find_node(ir, IrKind::MemberAccess, "process.env.API_KEY");
  int fetch_call = find_node(ir, IrKind::CallExpr, "fetch(");
  ASSERT_NE(env, -1);
  ASSERT_NE(fetch_call, -1);
  EXPECT_TRUE(reachable(ir, env, fetch_call));

  // Interface member names never become IR identifiers.
  EXPECT_EQ(find_node(ir, IrKind::Statement, "interface"), -1);
}

TEST(TsIr, ArrowWithAnnotatedParams) {
  FileIR ir = analyze(
      "const relay = (data: Buffer, extra?: string): void => {\n"
      "  push(data);\n"
      "};\n"
      "relay(content);\n",
      Language::TypeScript);
  ASSERT_EQ(ir.functions.size(), 1u);
  ASSERT_EQ(ir.functions[0].param_names.size(), 2u);
  EXPECT_EQ(ir.functions[0].param_names[0], "data");
  EXPECT_EQ(ir.functions[0].param_names[1], "extra");
}

TEST(JsIr, ClassBodySkippedWithoutCrash) {
  FileIR ir = analyze(
      "class Tool extends Base {\n"
      "  run() { return 1; }\n"
      "}\n"
      "const t = new Tool();\n");
  EXPECT_NE(find_node(ir, IrKind::CallExpr, "Tool()"), -1);
}

}  // namespace
}  // namespace skillscope
