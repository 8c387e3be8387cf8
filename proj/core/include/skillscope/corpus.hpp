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

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace skillscope {

/// One GitHub link decomposed into owner/repo@branch:subpath. Links without
/// a `/tree/<branch>` segment get the sentinel branch `HEAD` and an empty
/// subpath.
struct RepoRef {
  std::string owner;
  std::string repo;
  std::string branch;
  std::string subpath;
  std::string normalized_subpath;

  /// Grouping key `owner/repo@branch:normalized_subpath`.
  std::string key() const;
};

struct ManifestEntry {
  std::string url;
  std::string source;
};

struct DedupGroup {
  std::string key;
  std::vector<std::string> members;          // sorted
  std::map<std::string, int> source_tags;    // tag -> count
};

struct DedupReject {
  std::string url;
  std::string error;
};

struct DedupResult {
  std::vector<DedupGroup> groups;   // sorted by key
  std::vector<DedupReject> rejects; // one per distinct bad url, sorted
};

/// Parses `https://github.com/<owner>/<repo>[/tree/<branch>[/<subpath>]]`.
/// Throws ScopeError with NotGitHub or MalformedPath.
RepoRef parse_github_url(const std::string& url);

/// Truncates the path after the first (nearest-to-root) segment equal to a
/// marker (`skills` by default) and strips any trailing slash. Idempotent.
std::string normalize_subpath(const std::string& subpath);
std::string normalize_subpath(const std::string& subpath,
                              const std::vector<std::string>& markers);

DedupResult dedup(const std::vector<ManifestEntry>& manifest);

struct FilterDecision {
  bool programmatic = false;
  std::string reason;  // "ok" or the failed condition(s)
};

/// True iff the directory holds a SKILL.md at its root and at least one
/// file with a `.py`, `.js`, `.ts`, or `.go` suffix anywhere beneath it.
FilterDecision filter_programmatic(const std::filesystem::path& root);

/// Reads a line-delimited manifest of `{"url": ..., "source": ...}` records.
/// Unknown fields are ignored; unreadable lines become rejects downstream
/// (they are kept as entries with the raw line as url).
std::vector<ManifestEntry> read_manifest(const std::string& text);

/// Renders the dedup report document (sorted keys, 2-space indent).
std::string dedup_report_json(const DedupResult& result);

}  // namespace skillscope
