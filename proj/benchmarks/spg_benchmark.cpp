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

#include <benchmark/benchmark.h>

#include <random>
#include <string>

#include "skillscope/checker.hpp"
#include "skillscope/corpus.hpp"
#include "skillscope/pipeline.hpp"
#include "skillscope/spg.hpp"

namespace {

using namespace skillscope;

std::string synthetic_python(int functions) {
  std::string out = "import os\nimport requests\n\n";
  for (int f = 0; f < functions; ++f) {
    std::string n = std::to_string(f);
    out += "def handler_" + n + "(path):\n";
    out += "    data = open(path).read()\n";
    out += "    token = os.getenv('KEY_" + n + "')\n";
    out += "    cleaned = data.strip()\n";
    out += "    requests.post('https://svc.example/e" + n + "', headers={'a': token}, data=cleaned)\n";
    out += "    return cleaned\n\n";
  }
  return out;
}

void BM_AnalyzePythonFile(benchmark::State& state) {
  ImplementationFile file{"bench.py", Language::Python,
                          synthetic_python(static_cast<int>(state.range(0)))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(analyze_file(file));
  }
}
BENCHMARK(BM_AnalyzePythonFile)->Arg(8)->Arg(32);

void BM_BuildSkillSpg(benchmark::State& state) {
  Skill skill;
  skill.id = "bench";
  skill.description = parse_skill_md("Read data files and upload summaries.");
  skill.files.push_back(
      {"main.py", Language::Python, synthetic_python(static_cast<int>(state.range(0)))});
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_skill_spg(skill, default_taxonomy()));
  }
}
BENCHMARK(BM_BuildSkillSpg)->Arg(8)->Arg(32);

void BM_ClassifySkill(benchmark::State& state) {
  Skill skill;
  skill.id = "bench";
  skill.description = parse_skill_md(
      "Read data files, call the reporting API with the configured token, and save "
      "summaries.");
  skill.files.push_back({"main.py", Language::Python, synthetic_python(16)});
  Spg spg = build_skill_spg(skill, default_taxonomy());
  for (auto _ : state) {
    benchmark::DoNotOptimize(classify(spg, skill.description, default_taxonomy()));
  }
}
BENCHMARK(BM_ClassifySkill);

void BM_ReachabilityBfs(benchmark::State& state) {
  std::mt19937_64 rng(42);
  FileIR ir;
  ir.file = "bench.py";
  ir.language = Language::Python;
  const int n = static_cast<int>(state.range(0));
  for (int i = 0; i < n; ++i) {
    IrNode node;
    node.id = i;
    node.kind = IrKind::Statement;
    ir.nodes.push_back(node);
  }
  for (int e = 0; e < 3 * n; ++e) {
    ir.edges.push_back({static_cast<int>(rng() % static_cast<unsigned>(n)),
                        static_cast<int>(rng() % static_cast<unsigned>(n)),
                        rng() % 2 == 0 ? IrEdgeKind::Cfg : IrEdgeKind::Dfg});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(bfs_reach(ir, 0, kFlowEdges));
  }
}
BENCHMARK(BM_ReachabilityBfs)->Arg(50)->Arg(500);

void BM_DedupManifest(benchmark::State& state) {
  std::vector<ManifestEntry> manifest;
  for (int i = 0; i < 2000; ++i) {
    manifest.push_back({"https://github.com/owner" + std::to_string(i % 97) +
                            "/repo/tree/main/.claude/skills/s" + std::to_string(i),
                        "src" + std::to_string(i % 4)});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(dedup(manifest));
  }
}
BENCHMARK(BM_DedupManifest);

}  // namespace

BENCHMARK_MAIN();
