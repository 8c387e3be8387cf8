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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "skillscope/corpus.hpp"
#include "skillscope/errors.hpp"
#include "skillscope/eval.hpp"
#include "skillscope/gateway.hpp"
#include "skillscope/pipeline.hpp"
#include "skillscope/prompt.hpp"
#include "skillscope/synth.hpp"

namespace fs = std::filesystem;
using namespace skillscope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitPolicy = 3;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScopeError(Errc::IoError, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Atomic publish: write a temp file, then rename over the target.
void atomic_write(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw ScopeError(Errc::IoError, "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

std::string file_safe(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (c == '/' || c == '\\') c = '_';
  }
  return out;
}

struct SharedConfig {
  std::string rules_path;
  std::string out_dir = "skillscope-out";
  unsigned jobs = 0;

  Taxonomy taxonomy() const {
    return rules_path.empty() ? default_taxonomy() : load_taxonomy(read_file(rules_path));
  }
  std::vector<LexiconEntry> lexicon() const {
    return rules_path.empty() ? default_lexicon() : load_lexicon(read_file(rules_path));
  }
  unsigned worker_count(std::size_t items) const {
    unsigned hw = jobs != 0 ? jobs : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(items, 1)));
  }
};

// Runs fn(i) for every index across a fixed-size worker pool; results are
// collected by index so output order never depends on scheduling.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& fn) {
  if (count == 0) return;
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        std::size_t i = next.fetch_add(1);
        if (i >= count) break;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

std::vector<fs::path> skill_directories(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec) || ec) {
    throw ScopeError(Errc::IoError, "unreadable skills root: " + root.string());
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root, ec)) {
    if (entry.is_directory()) dirs.push_back(entry.path());
  }
  if (ec) throw ScopeError(Errc::IoError, "cannot list " + root.string());
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

// --- corpus ------------------------------------------------------------------

void substitute(std::string* text, const std::string& placeholder,
                const std::string& value) {
  std::size_t at = 0;
  while ((at = text->find(placeholder, at)) != std::string::npos) {
    text->replace(at, placeholder.size(), value);
    at += value.size();
  }
}

int cmd_corpus(const SharedConfig& shared, const std::string& manifest_path,
               const std::string& fetch_cmd) {
  std::vector<ManifestEntry> manifest = read_manifest(read_file(manifest_path));
  DedupResult result = dedup(manifest);
  std::string report = dedup_report_json(result);
  fs::path out = fs::path(shared.out_dir) / "dedup_report.json";
  atomic_write(out, report + "\n");

  std::size_t members = 0;
  for (const DedupGroup& group : result.groups) members += group.members.size();
  std::cout << "manifest entries: " << manifest.size() << "\n"
            << "groups: " << result.groups.size() << " (covering " << members << " links)\n"
            << "rejects: " << result.rejects.size() << "\n"
            << "report: " << out.string() << "\n";

  // Acquisition stays outside the library: each download target is handed
  // to the user-supplied command template.
  if (!fetch_cmd.empty()) {
    int fetched = 0, failed = 0;
    for (const DedupGroup& group : result.groups) {
      RepoRef ref = parse_github_url(group.members.front());
      fs::path dest = fs::path(shared.out_dir) / "skills" / file_safe(group.key);
      fs::create_directories(dest.parent_path());
      std::string command = fetch_cmd;
      substitute(&command, "{owner}", ref.owner);
      substitute(&command, "{repo}", ref.repo);
      substitute(&command, "{branch}", ref.branch);
      substitute(&command, "{subpath}", ref.normalized_subpath);
      substitute(&command, "{key}", group.key);
      substitute(&command, "{dest}", dest.string());
      int status = std::system(command.c_str());
      if (status == 0) {
        ++fetched;
      } else {
        ++failed;
        std::cerr << "fetch failed (" << status << "): " << command << "\n";
      }
    }
    std::cout << "fetched: " << fetched << " failed: " << failed << "\n";
  }
  return kExitOk;
}

// --- scan --------------------------------------------------------------------

int cmd_scan(const SharedConfig& shared, const std::string& root) {
  Taxonomy taxonomy = shared.taxonomy();
  std::vector<fs::path> dirs = skill_directories(root);

  struct Row {
    std::string id;
    std::string line;
    std::string document;  // empty when skipped
  };
  std::vector<Row> rows(dirs.size());

  parallel_for(dirs.size(), shared.worker_count(dirs.size()), [&](std::size_t i) {
    Row& row = rows[i];
    row.id = dirs[i].filename().generic_string();
    try {
      Skill skill = discover_skill(dirs[i], {.id = row.id});
      std::optional<Spg> spg = scan_skill(skill, taxonomy);
      if (!spg) {
        row.line = row.id + ": skipped (no supported implementation file parsed)";
        return;
      }
      row.document = serialize_spg(*spg);
      row.line = row.id + ": nodes=" + std::to_string(spg->stats.nodes) +
                 " edges=" + std::to_string(spg->stats.edges) +
                 " skipped=" + std::to_string(spg->skipped_files.size());
    } catch (const ScopeError& err) {
      row.line = row.id + ": not a skill (" + err.what() + ")";
    }
  });

  for (const Row& row : rows) {
    if (!row.document.empty()) {
      atomic_write(fs::path(shared.out_dir) / "graphs" / (file_safe(row.id) + ".json"),
                   row.document + "\n");
    }
    std::cout << row.line << "\n";
  }
  return kExitOk;
}

// --- check -------------------------------------------------------------------

int cmd_check(const SharedConfig& shared, const std::string& root,
              const std::string& backend, bool fail_on_inconsistency) {
  Taxonomy taxonomy = shared.taxonomy();
  std::vector<LexiconEntry> lexicon = shared.lexicon();

  std::unique_ptr<ModelGateway> gateway;
  if (backend == "model") {
    gateway = std::make_unique<ModelGateway>(gateway_config_from_env(),
                                             make_http_transport());
  } else if (backend != "rule") {
    throw ScopeError(Errc::ConfigError, "backend must be 'rule' or 'model'");
  }

  std::vector<fs::path> dirs = skill_directories(root);
  struct Row {
    std::string id;
    std::string line;
    std::string document;
    std::optional<VerdictClass> verdict;
  };
  std::vector<Row> rows(dirs.size());

  parallel_for(dirs.size(), shared.worker_count(dirs.size()), [&](std::size_t i) {
    Row& row = rows[i];
    row.id = dirs[i].filename().generic_string();
    try {
      Skill skill = discover_skill(dirs[i], {.id = row.id});
      ClassifyResult check;
      if (gateway != nullptr) {
        std::optional<Spg> spg = scan_skill(skill, taxonomy);
        if (!spg) {
          check = uncertain_result("no supported implementation file could be analyzed",
                                   "model:" + gateway->config().model);
        } else {
          try {
            check = gateway->check_with_model(taxonomy, skill.description.raw,
                                              serialize_spg(*spg));
          } catch (const ScopeError& err) {
            if (err.code() != Errc::TransportError) throw;
            check = uncertain_result(std::string("model call failed: ") + err.what(),
                                     "model:" + gateway->config().model);
          }
        }
      } else {
        check = run_rule_engine(skill, taxonomy, lexicon).check;
      }
      row.document = render_check_report(check.report, check.verdict);
      row.verdict = check.verdict.cls;
      row.line = row.id + ": " + verdict_name(check.verdict.cls);
    } catch (const ScopeError& err) {
      row.line = row.id + ": not a skill (" + err.what() + ")";
    }
  });

  std::map<std::string, VerdictClass> predictions;
  int counts[4] = {0, 0, 0, 0};
  for (const Row& row : rows) {
    if (!row.document.empty()) {
      atomic_write(fs::path(shared.out_dir) / "reports" / (file_safe(row.id) + ".json"),
                   row.document + "\n");
    }
    if (row.verdict) {
      predictions[row.id] = *row.verdict;
      switch (*row.verdict) {
        case VerdictClass::Inconsistent: ++counts[0]; break;
        case VerdictClass::CoarserDescription: ++counts[1]; break;
        case VerdictClass::Consistent: ++counts[2]; break;
        case VerdictClass::Uncertain: ++counts[3]; break;
      }
    }
    std::cout << row.line << "\n";
  }
  atomic_write(fs::path(shared.out_dir) / "predictions.jsonl",
               prediction_lines(predictions));
  std::cout << "verdicts: inconsistent=" << counts[0] << " coarser=" << counts[1]
            << " consistent=" << counts[2] << " uncertain=" << counts[3] << "\n";

  if (fail_on_inconsistency && counts[0] > 0) return kExitPolicy;
  return kExitOk;
}

// --- eval --------------------------------------------------------------------

int cmd_eval(const SharedConfig& shared, const std::string& predictions_path,
             const std::string& labels_path, const std::string& counts_path) {
  EvalResult result;
  if (!counts_path.empty()) {
    auto doc = nlohmann::json::parse(read_file(counts_path));
    result.metrics =
        metrics_from_counts(doc.at("tp").get<int>(), doc.at("fp").get<int>(),
                            doc.at("fn").get<int>());
  } else {
    if (predictions_path.empty() || labels_path.empty()) {
      throw ScopeError(Errc::ConfigError,
                       "eval needs --pred and --labels, or --counts");
    }
    result = compute_metrics(read_predictions(read_file(predictions_path)),
                             read_ground_truth(read_file(labels_path)));
  }

  fs::path out = fs::path(shared.out_dir) / "metrics.json";
  atomic_write(out, metrics_report_json(result) + "\n");

  auto pct = [](double ratio) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(1);
    s << ratio * 100.0 << "%";
    return s.str();
  };
  std::cout << "tp=" << result.metrics.tp << " fp=" << result.metrics.fp
            << " fn=" << result.metrics.fn << "\n"
            << "precision " << pct(result.metrics.precision) << ", recall "
            << pct(result.metrics.recall) << ", f1 " << pct(result.metrics.f1) << "\n"
            << "report: " << out.string() << "\n";
  return kExitOk;
}

// --- gen-corpus ----------------------------------------------------------------

int cmd_gen_corpus(const SharedConfig& shared, std::uint64_t seed,
                   const std::string& spec_path) {
  CorpusSpec spec = spec_path.empty() ? CorpusSpec::full_coverage()
                                      : CorpusSpec::from_json(read_file(spec_path));
  std::vector<GroundTruthLabel> labels =
      generate_synthetic_corpus(seed, spec, shared.out_dir);
  std::cout << "generated " << labels.size() << " skills under " << shared.out_dir << "\n"
            << "ground truth: " << (fs::path(shared.out_dir) / "ground_truth.jsonl").string()
            << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"skillscope: description-implementation consistency scanner for "
               "programmatic skills"};
  app.require_subcommand(1);
  app.fallthrough();  // shared options may follow the subcommand

  SharedConfig shared;
  app.add_option("--rules", shared.rules_path,
                 "taxonomy/rules/lexicon config document (JSON)");
  app.add_option("--out", shared.out_dir, "output directory (default skillscope-out)");
  app.add_option("--jobs", shared.jobs, "parallel workers (default: available cores)");

  std::string manifest_path;
  std::string fetch_cmd;
  CLI::App* corpus = app.add_subcommand(
      "corpus", "deduplicate a manifest of skill links into download targets");
  corpus->add_option("manifest", manifest_path, "line-delimited {url, source} records")
      ->required();
  corpus->add_option("--fetch-cmd", fetch_cmd,
                     "command template run per download target; placeholders "
                     "{owner} {repo} {branch} {subpath} {key} {dest}");

  std::string scan_root;
  CLI::App* scan = app.add_subcommand(
      "scan", "build one security property graph per skill directory");
  scan->add_option("root", scan_root, "directory of skill directories")->required();

  std::string check_root;
  std::string backend = "rule";
  bool fail_on_inconsistency = false;
  CLI::App* check = app.add_subcommand(
      "check", "check each skill's implementation against its description");
  check->add_option("root", check_root, "directory of skill directories")->required();
  check->add_option("--backend", backend, "rule (default) or model");
  check->add_flag("--fail-on-inconsistency", fail_on_inconsistency,
                  "exit 3 when any skill is Inconsistent");

  std::string pred_path, labels_path, counts_path;
  CLI::App* eval_cmd = app.add_subcommand("eval", "score predictions against ground truth");
  eval_cmd->add_option("--pred", pred_path, "predictions jsonl ({skill_id, class})");
  eval_cmd->add_option("--labels", labels_path, "ground truth jsonl");
  eval_cmd->add_option("--counts", counts_path, "precomputed {tp, fp, fn} document");

  std::uint64_t seed = 7;
  std::string spec_path;
  CLI::App* gen = app.add_subcommand("gen-corpus", "generate a labeled synthetic corpus");
  gen->add_option("--seed", seed, "generator seed (default 7)");
  gen->add_option("--spec", spec_path, "pattern counts document, e.g. {\"IC1\": 3}");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (app.got_subcommand(corpus)) return cmd_corpus(shared, manifest_path, fetch_cmd);
    if (app.got_subcommand(scan)) return cmd_scan(shared, scan_root);
    if (app.got_subcommand(check)) {
      return cmd_check(shared, check_root, backend, fail_on_inconsistency);
    }
    if (app.got_subcommand(eval_cmd)) {
      return cmd_eval(shared, pred_path, labels_path, counts_path);
    }
    if (app.got_subcommand(gen)) return cmd_gen_corpus(shared, seed, spec_path);
  } catch (const ScopeError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
