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

#include "skillscope/corpus.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "skillscope/errors.hpp"

namespace skillscope {
namespace {

namespace fs = std::filesystem;

TEST(ParseGithubUrl, FullTreeForm) {
  RepoRef ref = parse_github_url(
      "https://github.com/acme/tools/tree/main/.claude/skills/pdf");
  EXPECT_EQ(ref.owner, "acme");
  EXPECT_EQ(ref.repo, "tools");
  EXPECT_EQ(ref.branch, "main");
  EXPECT_EQ(ref.subpath, ".claude/skills/pdf");
  EXPECT_EQ(ref.normalized_subpath, ".claude/skills");
  EXPECT_EQ(ref.key(), "acme/tools@main:.claude/skills");
}

TEST(ParseGithubUrl, RepoRootGetsHeadSentinel) {
  RepoRef ref = parse_github_url("https://github.com/acme/tools");
  EXPECT_EQ(ref.owner, "acme");
  EXPECT_EQ(ref.repo, "tools");
  EXPECT_EQ(ref.branch, "HEAD");
  EXPECT_EQ(ref.subpath, "");
  EXPECT_EQ(ref.key(), "acme/tools@HEAD:");
}

TEST(ParseGithubUrl, NonGithubHostRejected) {
  try {
    parse_github_url("https://gitlab.com/a/b");
    FAIL() << "expected NotGitHub";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::NotGitHub);
  }
}

TEST(ParseGithubUrl, TooFewSegmentsRejected) {
  try {
    parse_github_url("https://github.com/acme");
    FAIL() << "expected MalformedPath";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::MalformedPath);
  }
}

TEST(ParseGithubUrl, TrailingSlashAndQueryStripped) {
  RepoRef ref = parse_github_url(
      "https://github.com/acme/tools/tree/main/skills/pdf/?tab=readme#top");
  EXPECT_EQ(ref.subpath, "skills/pdf");
  EXPECT_EQ(ref.normalized_subpath, "skills");
}

TEST(NormalizeSubpath, TruncatesAfterSkillsSegment) {
  EXPECT_EQ(normalize_subpath(".claude/skills/pdf-tools"), ".claude/skills");
}

TEST(NormalizeSubpath, NearestSkillsPrefixWins) {
  EXPECT_EQ(normalize_subpath("packages/a/skills/b/c"), "packages/a/skills");
}

TEST(NormalizeSubpath, FixedPoint) {
  EXPECT_EQ(normalize_subpath("skills"), "skills");
  EXPECT_EQ(normalize_subpath(""), "");
  EXPECT_EQ(normalize_subpath("docs/examples"), "docs/examples");
}

TEST(NormalizeSubpath, CaseSensitiveSegmentMatch) {
  EXPECT_EQ(normalize_subpath("Skills/pdf"), "Skills/pdf");
}

TEST(NormalizeSubpath, IdempotentOnRandomPaths) {
  std::mt19937_64 rng(20260809ull);
  const std::vector<std::string> pool = {"skills", "a", "b2",  "Skills", ".claude",
                                         "x-y",    "",  "pdf", "skills.md"};
  for (int i = 0; i < 1000; ++i) {
    std::string path;
    int segments = static_cast<int>(rng() % 6);
    for (int s = 0; s < segments; ++s) {
      if (s > 0 || rng() % 2 == 0) path += '/';
      path += pool[rng() % pool.size()];
    }
    if (rng() % 4 == 0) path += '/';
    std::string once = normalize_subpath(path);
    EXPECT_EQ(normalize_subpath(once), once) << "path=" << path;
    EXPECT_TRUE(once.empty() || once.back() != '/');
  }
}

TEST(Dedup, TrailingSkillSegmentsMergeIntoOneGroup) {
  // Both normalize to acme/tools@main:.claude/skills.
  std::vector<ManifestEntry> manifest = {
      {"https://github.com/acme/tools/tree/main/.claude/skills/pdf", "srcA"},
      {"https://github.com/acme/tools/tree/main/.claude/skills/excel", "srcB"},
  };
  DedupResult result = dedup(manifest);
  ASSERT_EQ(result.groups.size(), 1u);
  EXPECT_EQ(result.groups[0].key, "acme/tools@main:.claude/skills");
  EXPECT_EQ(result.groups[0].members.size(), 2u);
  EXPECT_EQ(result.groups[0].source_tags.at("srcA"), 1);
  EXPECT_EQ(result.groups[0].source_tags.at("srcB"), 1);
  EXPECT_TRUE(result.rejects.empty());
}

TEST(Dedup, SingletonGroup) {
  DedupResult result = dedup({{"https://github.com/a/b/tree/main/x", "s"}});
  ASSERT_EQ(result.groups.size(), 1u);
  EXPECT_EQ(result.groups[0].members.size(), 1u);
}

TEST(Dedup, DifferentBranchesStaySeparate) {
  DedupResult result = dedup({
      {"https://github.com/a/b/tree/main/skills/x", "s"},
      {"https://github.com/a/b/tree/dev/skills/x", "s"},
  });
  EXPECT_EQ(result.groups.size(), 2u);
}

TEST(Dedup, RejectsCarriedOutOfBandAndDeduplicated) {
  DedupResult result = dedup({
      {"https://gitlab.com/a/b", "s"},
      {"https://gitlab.com/a/b", "s"},
      {"https://github.com/a/b", "s"},
  });
  ASSERT_EQ(result.rejects.size(), 1u);
  EXPECT_EQ(result.rejects[0].url, "https://gitlab.com/a/b");
  EXPECT_EQ(result.groups.size(), 1u);
}

TEST(Dedup, PermutationInvariant) {
  std::vector<ManifestEntry> manifest;
  for (int i = 0; i < 40; ++i) {
    manifest.push_back({"https://github.com/o" + std::to_string(i % 7) + "/r/tree/m/skills/s" +
                            std::to_string(i),
                        "src" + std::to_string(i % 3)});
  }
  manifest.push_back({"bad url", "s"});

  DedupResult base = dedup(manifest);
  std::mt19937_64 rng(7);
  for (int round = 0; round < 500; ++round) {
    std::shuffle(manifest.begin(), manifest.end(), rng);
    DedupResult shuffled = dedup(manifest);
    ASSERT_EQ(shuffled.groups.size(), base.groups.size());
    for (std::size_t g = 0; g < base.groups.size(); ++g) {
      EXPECT_EQ(shuffled.groups[g].key, base.groups[g].key);
      EXPECT_EQ(shuffled.groups[g].members, base.groups[g].members);
      EXPECT_EQ(shuffled.groups[g].source_tags, base.groups[g].source_tags);
    }
    ASSERT_EQ(shuffled.rejects.size(), base.rejects.size());
  }
}

// Raw count >= deduped count >= filtered count.
TEST(Dedup, FunnelMonotonicity) {
  std::vector<ManifestEntry> manifest = {
      {"https://github.com/a/b/tree/m/.claude/skills/one", "s"},
      {"https://github.com/a/b/tree/m/.claude/skills/two", "s"},
      {"https://github.com/c/d/tree/m/skills/x", "s"},
      {"https://github.com/c/d", "s"},
  };
  DedupResult result = dedup(manifest);
  EXPECT_LE(result.groups.size(), manifest.size());
  EXPECT_GE(result.groups.size(), 1u);

  // Materialize one directory per group; only some are programmatic.
  fs::path root = fs::temp_directory_path() / "skillscope-funnel";
  fs::remove_all(root);
  std::size_t filtered = 0;
  for (std::size_t g = 0; g < result.groups.size(); ++g) {
    fs::path dir = root / ("g" + std::to_string(g));
    fs::create_directories(dir);
    std::ofstream(dir / "SKILL.md") << "x\n";
    if (g % 2 == 0) std::ofstream(dir / "run.py") << "pass\n";
    if (filter_programmatic(dir).programmatic) ++filtered;
  }
  EXPECT_LE(filtered, result.groups.size());
  EXPECT_GT(filtered, 0u);
  fs::remove_all(root);
}

TEST(FilterProgrammatic, SpecExamples) {
  fs::path root = fs::temp_directory_path() / "skillscope-filter-test";
  fs::remove_all(root);

  fs::create_directories(root / "yes");
  std::ofstream(root / "yes" / "SKILL.md") << "x\n";
  std::ofstream(root / "yes" / "run.py") << "pass\n";
  FilterDecision yes = filter_programmatic(root / "yes");
  EXPECT_TRUE(yes.programmatic);
  EXPECT_EQ(yes.reason, "ok");

  fs::create_directories(root / "onlymd");
  std::ofstream(root / "onlymd" / "SKILL.md") << "x\n";
  FilterDecision no_code = filter_programmatic(root / "onlymd");
  EXPECT_FALSE(no_code.programmatic);
  EXPECT_NE(no_code.reason.find("no analyzable"), std::string::npos);

  fs::create_directories(root / "onlypy");
  std::ofstream(root / "onlypy" / "run.py") << "pass\n";
  FilterDecision no_md = filter_programmatic(root / "onlypy");
  EXPECT_FALSE(no_md.programmatic);
  EXPECT_NE(no_md.reason.find("SKILL.md"), std::string::npos);

  fs::remove_all(root);
}

TEST(Manifest, ReadsJsonLinesAndIgnoresUnknownFields) {
  const std::string text =
      "{\"url\": \"https://github.com/a/b\", \"source\": \"sA\", \"stars\": 3}\n"
      "\n"
      "{\"url\": \"https://github.com/c/d\"}\n"
      "not json at all\n";
  std::vector<ManifestEntry> entries = read_manifest(text);
  ASSERT_EQ(entries.size(), 3u);
  EXPECT_EQ(entries[0].url, "https://github.com/a/b");
  EXPECT_EQ(entries[0].source, "sA");
  EXPECT_EQ(entries[1].source, "");
  EXPECT_EQ(entries[2].url, "not json at all");

  DedupResult result = dedup(entries);
  EXPECT_EQ(result.groups.size(), 2u);
  ASSERT_EQ(result.rejects.size(), 1u);
}

TEST(Manifest, DedupReportShape) {
  DedupResult result = dedup({{"https://github.com/a/b/tree/m/skills/x", "s"},
                              {"nope", "s"}});
  std::string doc = dedup_report_json(result);
  EXPECT_NE(doc.find("\"groups\""), std::string::npos);
  EXPECT_NE(doc.find("\"rejects\""), std::string::npos);
  EXPECT_NE(doc.find("a/b@m:skills"), std::string::npos);
}

}  // namespace
}  // namespace skillscope
