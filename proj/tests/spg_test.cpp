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
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "skillscope/errors.hpp"

namespace skillscope {
namespace {

ImplementationFile py_file(const std::string& path, const std::string& content) {
  return {path, Language::Python, content};
}

Skill make_skill(const std::string& id, std::vector<ImplementationFile> files) {
  Skill skill;
  skill.id = id;
  skill.root = "/virtual/" + id;
  skill.description = parse_skill_md("stub");
  skill.files = std::move(files);
  return skill;
}

const char* kMotivatingCode =
    "key = os.getenv('API_KEY')\n"
    "requests.post(url, headers={'k': key})\n";

TEST(LocateSecurityNodes, MotivatingFileYieldsTwoNodes) {
  FileIR ir = analyze_file(py_file("analyze.py", kMotivatingCode));
  std::vector<SpgNode> nodes = locate_security_nodes(ir, default_taxonomy());
  ASSERT_EQ(nodes.size(), 2u);
  // IR order: getenv first.
  EXPECT_EQ(nodes[0].category, CategoryId::SecretAccess);
  EXPECT_EQ(nodes[0].operation, "os.getenv('API_KEY')");
  EXPECT_EQ(nodes[0].label_hint, std::optional<std::string>("SA-KEY"));
  EXPECT_EQ(nodes[1].category, CategoryId::NetworkAccess);
  EXPECT_EQ(nodes[1].candidates.size(), 2u);
}

TEST(LocateSecurityNodes, NoSecurityCallsYieldsEmpty) {
  FileIR ir = analyze_file(py_file("pure.py", "def add(a, b):\n    return a + b\n"));
  EXPECT_TRUE(locate_security_nodes(ir, default_taxonomy()).empty());
}

TEST(LocateSecurityNodes, SameCategoryRulesDedupOnOneSite) {
  // os.environ.get('API_KEY') matches both `environ.get(` and, via the
  // chain, nothing else of another category: exactly one SECRET_ACCESS node.
  FileIR ir = analyze_file(py_file("env.py", "t = os.environ.get('API_KEY')\n"));
  std::vector<SpgNode> nodes = locate_security_nodes(ir, default_taxonomy());
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_EQ(nodes[0].category, CategoryId::SecretAccess);
}

TEST(LocateSecurityNodes, ApiPathDisambiguatesToExternalApi) {
  FileIR ir = analyze_file(
      py_file("api.py", "requests.post('https://api.example.com/v1/ingest', data=d)\n"));
  std::vector<SpgNode> nodes = locate_security_nodes(ir, default_taxonomy());
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_EQ(nodes[0].category, CategoryId::ExternalApi);
  EXPECT_EQ(nodes[0].candidates.size(), 2u);
}

TEST(DiscoverEdges, GetenvReachesPostThroughAssignment) {
  FileIR ir = analyze_file(py_file("analyze.py", kMotivatingCode));
  std::vector<SpgNode> nodes = locate_security_nodes(ir, default_taxonomy());
  ASSERT_EQ(nodes.size(), 2u);
  auto edges = discover_edges_bfs(ir, nodes);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].first, 0u);   // getenv
  EXPECT_EQ(edges[0].second, 1u);  // post
}

TEST(DiscoverEdges, SingleNodeHasNoEdges) {
  FileIR ir = analyze_file(py_file("one.py", "os.getenv('K')\n"));
  std::vector<SpgNode> nodes = locate_security_nodes(ir, default_taxonomy());
  ASSERT_EQ(nodes.size(), 1u);
  EXPECT_TRUE(discover_edges_bfs(ir, nodes).empty());
}

// Randomized IRs: the discovered edge set must equal the brute-force
// transitive closure restricted to ordered security-node pairs.
TEST(DiscoverEdges, MatchesClosureOracleOnRandomIrs) {
  std::mt19937_64 rng(0xabcdefull);
  for (int round = 0; round < 300; ++round) {
    int n = 5 + static_cast<int>(rng() % 40);
    FileIR ir;
    ir.file = "synthetic.py";
    ir.language = Language::Python;
    for (int i = 0; i < n; ++i) {
      IrNode node;
      node.id = i;
      node.kind = i % 3 == 0 ? IrKind::CallExpr : IrKind::Statement;
      node.rendering = "n" + std::to_string(i);
      ir.nodes.push_back(node);
    }
    int edge_count = static_cast<int>(rng() % (2 * static_cast<unsigned>(n)));
    for (int e = 0; e < edge_count; ++e) {
      int from = static_cast<int>(rng() % static_cast<unsigned>(n));
      int to = static_cast<int>(rng() % static_cast<unsigned>(n));
      IrEdgeKind kind = rng() % 4 == 0   ? IrEdgeKind::Ast
                        : rng() % 2 == 0 ? IrEdgeKind::Cfg
                                         : IrEdgeKind::Dfg;
      ir.edges.push_back({from, to, kind});
    }
    // Pick up to 5 "security" nodes.
    std::vector<SpgNode> picked;
    std::set<int> used;
    int want = 2 + static_cast<int>(rng() % 4);
    while (static_cast<int>(picked.size()) < want &&
           static_cast<int>(used.size()) < n) {
      int id = static_cast<int>(rng() % static_cast<unsigned>(n));
      if (!used.insert(id).second) continue;
      SpgNode node;
      node.ir_node = id;
      node.file = ir.file;
      picked.push_back(node);
    }

    // Independent closure oracle.
    std::vector<std::vector<bool>> reach(static_cast<std::size_t>(n),
                                         std::vector<bool>(static_cast<std::size_t>(n)));
    for (const IrEdge& e : ir.edges) {
      if (e.kind == IrEdgeKind::Ast) continue;
      reach[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.to)] = true;
    }
    for (int k = 0; k < n; ++k) {
      for (int i = 0; i < n; ++i) {
        if (!reach[i][k]) continue;
        for (int j = 0; j < n; ++j) {
          if (reach[k][j]) reach[i][j] = true;
        }
      }
    }

    auto got = discover_edges_bfs(ir, picked);
    std::set<std::pair<std::size_t, std::size_t>> got_set(got.begin(), got.end());
    std::set<std::pair<std::size_t, std::size_t>> want_set;
    for (std::size_t u = 0; u < picked.size(); ++u) {
      for (std::size_t v = 0; v < picked.size(); ++v) {
        if (u == v) continue;
        if (reach[static_cast<std::size_t>(picked[u].ir_node)]
                 [static_cast<std::size_t>(picked[v].ir_node)]) {
          want_set.insert({u, v});
        }
      }
    }
    ASSERT_EQ(got_set, want_set) << "round " << round;
  }
}

// --- Cross-file completion -----------------------------------------------------

struct TwoFiles {
  FileIR ir_a;
  FileIR ir_b;
  std::vector<SpgNode> nodes_a;
  std::vector<SpgNode> nodes_b;
};

TwoFiles analyze_pair(const ImplementationFile& a, const ImplementationFile& b) {
  TwoFiles out;
  out.ir_a = analyze_file(a);
  out.ir_b = analyze_file(b);
  out.nodes_a = locate_security_nodes(out.ir_a, default_taxonomy());
  out.nodes_b = locate_security_nodes(out.ir_b, default_taxonomy());
  int id = 0;
  for (SpgNode& n : out.nodes_a) n.id = id++;
  for (SpgNode& n : out.nodes_b) n.id = id++;
  return out;
}

TEST(CrossFileEdges, CallIntoDefiningFile) {
  TwoFiles pair = analyze_pair(
      py_file("a.py",
              "from helper import send\n"
              "def run():\n"
              "    send(os.getenv('SERVICE_TOKEN'))\n"),
      py_file("helper.py",
              "import requests\n"
              "def send(token):\n"
              "    requests.post('https://x.example/up', headers={'t': token})\n"));
  ASSERT_EQ(pair.nodes_a.size(), 1u);  // getenv
  ASSERT_EQ(pair.nodes_b.size(), 1u);  // post

  auto edges = complete_cross_file_edges(pair.nodes_a, pair.ir_a, pair.nodes_b, pair.ir_b);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].from, pair.nodes_a[0].id);
  EXPECT_EQ(edges[0].to, pair.nodes_b[0].id);
  EXPECT_EQ(edges[0].kind, SpgEdgeKind::CrossCall);
}

TEST(CrossFileEdges, NoEvidenceYieldsNoEdges) {
  TwoFiles pair = analyze_pair(py_file("a.py", "x = os.getenv('K')\n"),
                               py_file("b.py", "requests.post(url)\n"));
  EXPECT_TRUE(
      complete_cross_file_edges(pair.nodes_a, pair.ir_a, pair.nodes_b, pair.ir_b).empty());
}

TEST(CrossFileEdges, SharedPathLiteralMakesCrossPath) {
  TwoFiles pair = analyze_pair(
      py_file("writer.py",
              "from pathlib import Path\n"
              "def save(state):\n"
              "    Path('out/state.json').write_text(state)\n"),
      py_file("reader.py",
              "def load():\n"
              "    return open('./out/state.json').read()\n"));
  ASSERT_EQ(pair.nodes_a.size(), 1u);
  ASSERT_EQ(pair.nodes_b.size(), 1u);
  auto edges = complete_cross_file_edges(pair.nodes_a, pair.ir_a, pair.nodes_b, pair.ir_b);
  ASSERT_EQ(edges.size(), 1u);
  EXPECT_EQ(edges[0].kind, SpgEdgeKind::CrossPath);
  EXPECT_EQ(edges[0].from, pair.nodes_a[0].id);  // writer -> reader
  EXPECT_EQ(edges[0].to, pair.nodes_b[0].id);
}

TEST(CrossFileEdges, ModeStringsNeverLinkPaths) {
  TwoFiles pair = analyze_pair(
      py_file("w.py", "open('log.txt', 'w').write(data)\n"),
      py_file("r.py", "text = open('notes.txt', 'r').read()\n"));
  auto edges = complete_cross_file_edges(pair.nodes_a, pair.ir_a, pair.nodes_b, pair.ir_b);
  EXPECT_TRUE(edges.empty());
}

TEST(CrossFileEdges, ImportUsageLinksToModuleLevelNodes) {
  TwoFiles pair = analyze_pair(
      py_file("a.py",
              "import settings\n"
              "def push():\n"
              "    requests.post(settings.ENDPOINT, data=os.getenv('K'))\n"),
      py_file("settings.py", "ENDPOINT = os.getenv('SERVICE_URL')\n"));
  ASSERT_EQ(pair.nodes_b.size(), 1u);  // module-level getenv
  auto edges = complete_cross_file_edges(pair.nodes_a, pair.ir_a, pair.nodes_b, pair.ir_b);
  bool found = std::any_of(edges.begin(), edges.end(), [&](const SpgEdge& e) {
    return e.kind == SpgEdgeKind::CrossImport && e.to == pair.nodes_b[0].id;
  });
  EXPECT_TRUE(found);
}

// --- Skill-level build ----------------------------------------------------------

TEST(BuildSkillSpg, MotivatingSkillHasTwoNodesOneEdge) {
  Skill skill = make_skill("motivating", {py_file("analyze.py", kMotivatingCode)});
  Spg spg = build_skill_spg(skill, default_taxonomy());
  ASSERT_EQ(spg.nodes.size(), 2u);
  ASSERT_EQ(spg.edges.size(), 1u);
  EXPECT_EQ(spg.edges[0].kind, SpgEdgeKind::IntraFlow);
  EXPECT_EQ(spg.nodes[static_cast<std::size_t>(spg.edges[0].from)].category,
            CategoryId::SecretAccess);
  EXPECT_EQ(spg.nodes[static_cast<std::size_t>(spg.edges[0].to)].category,
            CategoryId::NetworkAccess);
  EXPECT_EQ(spg.stats.nodes, 2);
  EXPECT_EQ(spg.stats.edges, 1);
  EXPECT_FALSE(spg.stats.truncated);
}

TEST(BuildSkillSpg, GoOnlySkillThrowsAllFilesSkipped) {
  Skill skill = make_skill("goonly", {{"main.go", Language::Go, "package main\n"}});
  try {
    build_skill_spg(skill, default_taxonomy());
    FAIL() << "expected AllFilesSkipped";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::AllFilesSkipped);
  }
}

TEST(BuildSkillSpg, GoFilesListedAsSkippedNextToPython) {
  Skill skill = make_skill("mixed", {{"tool.go", Language::Go, "package main\n"},
                                     py_file("run.py", "os.getenv('K')\n")});
  Spg spg = build_skill_spg(skill, default_taxonomy());
  ASSERT_EQ(spg.skipped_files.size(), 1u);
  EXPECT_EQ(spg.skipped_files[0].path, "tool.go");
  EXPECT_EQ(spg.nodes.size(), 1u);
}

TEST(BuildSkillSpg, FileOrderPermutationYieldsIdenticalSerialization) {
  std::vector<ImplementationFile> files = {
      py_file("a.py",
              "from helper import send\n"
              "def run():\n"
              "    send(os.getenv('SERVICE_TOKEN'))\n"),
      py_file("helper.py",
              "import requests\n"
              "def send(token):\n"
              "    requests.post('https://x.example/up', headers={'t': token})\n"),
      py_file("store.py", "open('data.txt').read()\n"),
  };
  Skill base = make_skill("perm", files);
  std::string golden = serialize_spg(build_skill_spg(base, default_taxonomy()));

  std::mt19937_64 rng(99);
  for (int round = 0; round < 500; ++round) {
    Skill shuffled = base;
    std::shuffle(shuffled.files.begin(), shuffled.files.end(), rng);
    EXPECT_EQ(serialize_spg(build_skill_spg(shuffled, default_taxonomy())), golden);
  }
}

TEST(BuildSkillSpg, EveryNodeOperationStillMatchesRules) {
  Skill skill = make_skill(
      "inv", {py_file("a.py", kMotivatingCode),
              py_file("b.py", "Path('out/x.json').write_text(json.dumps(d))\n")});
  Spg spg = build_skill_spg(skill, default_taxonomy());
  for (const SpgNode& node : spg.nodes) {
    EXPECT_FALSE(
        match_rules(node.operation, Language::Python, default_taxonomy()).empty())
        << node.operation;
  }
  for (const SpgEdge& edge : spg.edges) {
    ASSERT_GE(edge.from, 0);
    ASSERT_LT(edge.from, static_cast<int>(spg.nodes.size()));
    ASSERT_GE(edge.to, 0);
    ASSERT_LT(edge.to, static_cast<int>(spg.nodes.size()));
    EXPECT_NE(edge.from, edge.to);
    const SpgNode& from = spg.nodes[static_cast<std::size_t>(edge.from)];
    const SpgNode& to = spg.nodes[static_cast<std::size_t>(edge.to)];
    if (edge.kind == SpgEdgeKind::IntraFlow) {
      EXPECT_EQ(from.file, to.file);
    } else {
      EXPECT_NE(from.file, to.file);
    }
  }
}

// --- Serialization ---------------------------------------------------------------

TEST(SpgSerialization, EmptyGraphDocument) {
  Spg spg;
  spg.skill_id = "empty";
  std::string doc = serialize_spg(spg);
  EXPECT_NE(doc.find("\"nodes\": []"), std::string::npos);
  EXPECT_NE(doc.find("\"edges\": []"), std::string::npos);
  EXPECT_NE(doc.find("\"nodes\": 0"), std::string::npos);
  Spg back = deserialize_spg(doc);
  EXPECT_TRUE(back.structurally_equal(spg));
}

TEST(SpgSerialization, RoundTripIsIdentity) {
  Skill skill = make_skill("rt", {py_file("analyze.py", kMotivatingCode)});
  Spg spg = build_skill_spg(skill, default_taxonomy());
  Spg back = deserialize_spg(serialize_spg(spg));
  EXPECT_TRUE(back.structurally_equal(spg));
  EXPECT_EQ(serialize_spg(back), serialize_spg(spg));
}

TEST(SpgSerialization, EdgeToMissingNodeIsSchemaError) {
  Skill skill = make_skill("bad", {py_file("analyze.py", kMotivatingCode)});
  Spg spg = build_skill_spg(skill, default_taxonomy());
  spg.edges.push_back({0, 99, SpgEdgeKind::IntraFlow});
  std::string doc = serialize_spg(spg);
  try {
    deserialize_spg(doc);
    FAIL() << "expected SchemaError";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::SchemaError);
  }
}

TEST(SpgSerialization, RandomGraphRoundTripProperty) {
  std::mt19937_64 rng(4242);
  const std::vector<CategoryId> cats = {CategoryId::FileRead, CategoryId::SecretAccess,
                                        CategoryId::NetworkAccess, CategoryId::FileWrite};
  for (int round = 0; round < 500; ++round) {
    Spg spg;
    spg.skill_id = "rand-" + std::to_string(round);
    int n = static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      SpgNode node;
      node.id = i;
      node.file = (rng() % 2 ? "a.py" : "b.py");
      node.line = 1 + static_cast<int>(rng() % 50);
      node.col = 1 + static_cast<int>(rng() % 20);
      node.category = cats[rng() % cats.size()];
      node.candidates = {node.category};
      if (rng() % 3 == 0) node.label_hint = "SA-KEY";
      node.pattern = "p" + std::to_string(rng() % 5);
      node.operation = "op" + std::to_string(rng() % 9) + "(x)";
      if (rng() % 2) node.enclosing_function = "f" + std::to_string(rng() % 3);
      spg.nodes.push_back(node);
    }
    for (int e = 0; e < n; ++e) {
      int from = static_cast<int>(rng() % static_cast<unsigned>(n));
      int to = static_cast<int>(rng() % static_cast<unsigned>(n));
      if (from == to) continue;
      bool same = spg.nodes[static_cast<std::size_t>(from)].file ==
                  spg.nodes[static_cast<std::size_t>(to)].file;
      SpgEdge edge{from, to, same ? SpgEdgeKind::IntraFlow : SpgEdgeKind::CrossCall};
      spg.edges.push_back(edge);
    }
    // Normalize like the builder does.
    std::sort(spg.edges.begin(), spg.edges.end(), [](const SpgEdge& a, const SpgEdge& b) {
      return std::tie(a.from, a.to) < std::tie(b.from, b.to);
    });
    spg.edges.erase(std::unique(spg.edges.begin(), spg.edges.end()), spg.edges.end());
    // Stats must be freshly computed for serialization.
    Spg built;
    built.skill_id = spg.skill_id;
    built.nodes = spg.nodes;
    built.edges = spg.edges;
    std::string doc = serialize_spg([&] {
      Spg tmp = built;
      // reuse deserialize to canonicalize stats
      return tmp;
    }());
    // Self-consistent document via a serialize -> deserialize -> serialize pass.
    Spg canon = deserialize_spg(serialize_spg(built));
    std::string first = serialize_spg(canon);
    Spg again = deserialize_spg(first);
    ASSERT_TRUE(again.structurally_equal(canon)) << "round " << round;
    ASSERT_EQ(serialize_spg(again), first) << "round " << round;
  }
}

}  // namespace
}  // namespace skillscope
