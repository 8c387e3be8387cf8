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

#include "skillscope/taxonomy.hpp"

#include <algorithm>
#include <set>

#include "gtest/gtest.h"
#include "skillscope/errors.hpp"

namespace skillscope {
namespace {

std::set<CategoryId> matched_categories(const std::string& site, Language lang) {
  std::set<CategoryId> out;
  for (const RuleMatch& match : match_rules(site, lang, default_taxonomy())) {
    for (CategoryId id : match.rule->candidates) out.insert(id);
  }
  return out;
}

TEST(Taxonomy, DefaultHasElevenCategoriesAndThirtyTwoLabels) {
  const Taxonomy& t = default_taxonomy();
  EXPECT_EQ(t.categories().size(), 11u);
  std::size_t labels = 0;
  for (const Category& cat : t.categories()) labels += cat.labels.size();
  EXPECT_EQ(labels, 32u);
}

TEST(Taxonomy, EveryCategoryHasAtLeastFourRules) {
  const Taxonomy& t = default_taxonomy();
  for (const Category& cat : t.categories()) {
    int count = 0;
    for (const LocalizationRule& rule : t.rules()) {
      if (std::find(rule.candidates.begin(), rule.candidates.end(), cat.id) !=
          rule.candidates.end()) {
        ++count;
      }
    }
    EXPECT_GE(count, 4) << category_name(cat.id);
  }
}

TEST(Taxonomy, CodePrefixMapsToCategory) {
  const Taxonomy& t = default_taxonomy();
  for (const Category& cat : t.categories()) {
    const std::string prefix = std::string(category_code_prefix(cat.id)) + "-";
    for (const SecondLevelLabel& label : cat.labels) {
      EXPECT_EQ(label.code.rfind(prefix, 0), 0u) << label.code;
      EXPECT_EQ(label.category, cat.id);
    }
  }
  EXPECT_EQ(t.find_label("SA-KEY")->category, CategoryId::SecretAccess);
  EXPECT_EQ(t.find_label("SA-KEY")->operational_description,
            "Access API keys, passwords, OAuth tokens, access tokens, or similar secrets.");
}

TEST(Taxonomy, MissingCategoryIsInvalid) {
  Taxonomy broken = default_taxonomy();
  broken.categories_.erase(
      std::remove_if(broken.categories_.begin(), broken.categories_.end(),
                     [](const Category& c) { return c.id == CategoryId::Observability; }),
      broken.categories_.end());
  try {
    broken.validate();
    FAIL() << "expected TaxonomyInvalid";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::TaxonomyInvalid);
    EXPECT_NE(std::string(err.what()).find("category count 10"), std::string::npos);
  }
}

TEST(Taxonomy, DuplicateLabelCodeIsInvalid) {
  Taxonomy broken = default_taxonomy();
  for (Category& cat : broken.categories_) {
    if (cat.id == CategoryId::SecretAccess) {
      // Replace SA-SESSION with a duplicate of SA-KEY; totals stay at 32.
      cat.labels[1] = cat.labels[0];
    }
  }
  try {
    broken.validate();
    FAIL() << "expected TaxonomyInvalid";
  } catch (const ScopeError& err) {
    EXPECT_EQ(err.code(), Errc::TaxonomyInvalid);
    EXPECT_NE(std::string(err.what()).find("duplicate label code SA-KEY"), std::string::npos);
  }
}

TEST(Taxonomy, ConfigRoundTrip) {
  std::string doc = taxonomy_to_json(default_taxonomy());
  Taxonomy loaded = load_taxonomy(doc);
  EXPECT_EQ(loaded.categories().size(), 11u);
  EXPECT_EQ(loaded.rules().size(), default_taxonomy().rules().size());
  EXPECT_EQ(taxonomy_to_json(loaded), doc);
}

TEST(Taxonomy, LoadEmptyReturnsDefault) {
  Taxonomy t = load_taxonomy("");
  EXPECT_EQ(t.categories().size(), 11u);
}

// The exemplar patterns and their categories, as the rule set must
// reproduce them.
TEST(MatchRules, ExemplarPatternsMapToExpectedCategories) {
  using S = std::set<CategoryId>;
  EXPECT_EQ(matched_categories("open('input.txt')", Language::Python),
            S{CategoryId::FileRead});
  EXPECT_EQ(matched_categories("fs.readFile(path, cb)", Language::JavaScript),
            S{CategoryId::FileRead});
  EXPECT_EQ(matched_categories("f.write(data)", Language::Python),
            S{CategoryId::FileWrite});
  EXPECT_EQ(matched_categories("fs.createWriteStream(out)", Language::JavaScript),
            S{CategoryId::FileWrite});
  EXPECT_EQ(matched_categories("os.getenv('API_KEY')", Language::Python),
            S{CategoryId::SecretAccess});
  EXPECT_EQ(matched_categories("process.env.API_KEY", Language::JavaScript),
            S{CategoryId::SecretAccess});
  EXPECT_EQ(matched_categories("requests.post(endpoint, headers={...})", Language::Python),
            (S{CategoryId::NetworkAccess, CategoryId::ExternalApi}));
  EXPECT_EQ(matched_categories("fetch(url)", Language::JavaScript),
            (S{CategoryId::NetworkAccess, CategoryId::ExternalApi}));
}

TEST(MatchRules, SecretAccessExamples) {
  auto matches = match_rules("os.getenv('API_KEY')", Language::Python, default_taxonomy());
  ASSERT_EQ(matches.size(), 1u);
  EXPECT_EQ(matches[0].rule->primary_category(), CategoryId::SecretAccess);
  EXPECT_EQ(matches[0].matched_text, "os.getenv");
}

TEST(MatchRules, NoSecurityPatternYieldsEmpty) {
  EXPECT_TRUE(match_rules("x = 1 + 2", Language::Python, default_taxonomy()).empty());
  EXPECT_TRUE(match_rules("total += count", Language::Python, default_taxonomy()).empty());
}

TEST(MatchRules, NeverMatchesInsideStringLiterals) {
  EXPECT_TRUE(match_rules("\"call open( here\"", Language::Python, default_taxonomy()).empty());
  EXPECT_TRUE(match_rules("'os.getenv(\"KEY\")'", Language::Python, default_taxonomy()).empty());
  // Literal arguments never contribute a callee.
  auto matches = match_rules("print('use requests.post( for uploads')", Language::Python,
                             default_taxonomy());
  EXPECT_TRUE(matches.empty());
}

TEST(MatchRules, NestedArgumentContentDoesNotMatch) {
  // The outer call is printish; the inner getenv would be its own IR node.
  EXPECT_TRUE(
      match_rules("notify(os.getenv('API_KEY'))", Language::Python, default_taxonomy())
          .empty());
}

TEST(MatchRules, CallPrefixRequiresSimpleCallee) {
  // `webbrowser.open(` must not hit the bare `open(` rule.
  auto cats = matched_categories("webbrowser.open(url)", Language::Python);
  EXPECT_EQ(cats, std::set<CategoryId>{CategoryId::NetworkAccess});
  // A chained continuation is not a fresh `open(` call either.
  EXPECT_TRUE(matched_categories("reopen(path)", Language::Python).empty());
}

TEST(MatchRules, TrailingSegmentExactness) {
  // json.dumps serializes to a string; only json.dump writes a file.
  EXPECT_TRUE(matched_categories("json.dumps(rows)", Language::Python).empty());
  EXPECT_EQ(matched_categories("json.dump(rows, fh)", Language::Python),
            std::set<CategoryId>{CategoryId::FileWrite});
}

TEST(MatchRules, LanguageFiltering) {
  EXPECT_TRUE(matched_categories("fetch(url)", Language::Python).empty());
  EXPECT_TRUE(matched_categories("os.getenv('K')", Language::JavaScript).empty());
}

TEST(MatchRules, AttributeAccessRequiresNonCall) {
  EXPECT_EQ(matched_categories("sys.argv[1]", Language::Python),
            std::set<CategoryId>{CategoryId::FileRead});
  EXPECT_EQ(matched_categories("os.environ['TOKEN']", Language::Python),
            std::set<CategoryId>{CategoryId::SecretAccess});
  EXPECT_EQ(matched_categories("os.environ.get('TOKEN')", Language::Python),
            std::set<CategoryId>{CategoryId::SecretAccess});
}

TEST(MatchRules, OrderIndependentMatchSet) {
  Taxonomy reversed = default_taxonomy();
  std::reverse(reversed.rules_.begin(), reversed.rules_.end());
  const std::vector<std::string> sites = {
      "os.getenv('API_KEY')", "requests.post(url)", "open(p)",
      "fs.mkdirSync(dir)",    "subprocess.run(cmd)"};
  for (const std::string& site : sites) {
    for (Language lang : {Language::Python, Language::JavaScript}) {
      std::set<std::string> base;
      for (const auto& m : match_rules(site, lang, default_taxonomy())) {
        base.insert(m.rule->pattern);
      }
      std::set<std::string> perm;
      for (const auto& m : match_rules(site, lang, reversed)) {
        perm.insert(m.rule->pattern);
      }
      EXPECT_EQ(base, perm) << site;
    }
  }
}

TEST(ResolveCandidates, ApiPathPicksExternalApi) {
  const std::vector<CategoryId> both = {CategoryId::NetworkAccess, CategoryId::ExternalApi};
  EXPECT_EQ(resolve_candidates(both, "requests.post('https://api.example.com/v1/ingest')"),
            CategoryId::ExternalApi);
  EXPECT_EQ(resolve_candidates(both, "requests.put('https://h.example/api/upload')"),
            CategoryId::ExternalApi);
  EXPECT_EQ(resolve_candidates(both, "requests.post('https://collector.example.com/ingest')"),
            CategoryId::NetworkAccess);
  EXPECT_EQ(resolve_candidates({CategoryId::ExternalApi}, "anything"),
            CategoryId::ExternalApi);
}

TEST(RefineLabelHint, SecretNamesPickSaKey) {
  EXPECT_EQ(refine_label_hint(CategoryId::SecretAccess, std::nullopt,
                              "os.getenv('API_KEY')"),
            std::optional<std::string>("SA-KEY"));
  EXPECT_EQ(refine_label_hint(CategoryId::SecretAccess, std::nullopt,
                              "request.cookies.get('sid')"),
            std::optional<std::string>("SA-SESSION"));
  EXPECT_EQ(refine_label_hint(CategoryId::SecretAccess, std::nullopt, "os.getenv('HOME')"),
            std::nullopt);
  // A rule-provided hint always wins.
  EXPECT_EQ(refine_label_hint(CategoryId::SecretAccess, std::string("SA-ID"),
                              "os.getenv('API_KEY')"),
            std::optional<std::string>("SA-ID"));
}

TEST(RefineLabelHint, FileWriteTargets) {
  EXPECT_EQ(refine_label_hint(CategoryId::FileWrite, std::nullopt,
                              "Path('output/report.json').write_text(data)"),
            std::optional<std::string>("FW-OUTPUT"));
  EXPECT_EQ(refine_label_hint(CategoryId::FileWrite, std::nullopt,
                              "Path('.cache/dash.json').write_text(data)"),
            std::optional<std::string>("FW-STATE"));
}

}  // namespace
}  // namespace skillscope
