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
#include <cctype>
#include <map>
#include <set>

#include <nlohmann/json.hpp>

#include "skillscope/errors.hpp"
#include "skillscope/skill.hpp"

namespace skillscope {

namespace fs = std::filesystem;
using nlohmann::json;

std::string RepoRef::key() const {
  return owner + "/" + repo + "@" + branch + ":" + normalized_subpath;
}

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_segments(const std::string& path) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : path) {
    if (c == '/') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string join_segments(const std::vector<std::string>& segs, std::size_t begin,
                          std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (!out.empty()) out += '/';
    out += segs[i];
  }
  return out;
}

}  // namespace

RepoRef parse_github_url(const std::string& url) {
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) {
    throw ScopeError(Errc::MalformedPath, "not an absolute URL: " + url);
  }
  std::string rest = url.substr(scheme + 3);
  std::size_t slash = rest.find('/');
  std::string host = lower(slash == std::string::npos ? rest : rest.substr(0, slash));
  if (host != "github.com" && host != "www.github.com") {
    throw ScopeError(Errc::NotGitHub, "host is " + host);
  }
  std::string path = slash == std::string::npos ? "" : rest.substr(slash + 1);
  // Strip query and fragment.
  std::size_t cut = path.find_first_of("?#");
  if (cut != std::string::npos) path = path.substr(0, cut);

  std::vector<std::string> segs = split_segments(path);
  if (segs.size() < 2) {
    throw ScopeError(Errc::MalformedPath, "need at least owner/repo: " + url);
  }

  RepoRef ref;
  ref.owner = segs[0];
  ref.repo = segs[1];
  if (segs.size() >= 4 && segs[2] == "tree") {
    ref.branch = segs[3];
    ref.subpath = join_segments(segs, 4, segs.size());
  } else {
    ref.branch = "HEAD";
    ref.subpath = "";
  }
  ref.normalized_subpath = normalize_subpath(ref.subpath);
  return ref;
}

std::string normalize_subpath(const std::string& subpath) {
  return normalize_subpath(subpath, {"skills"});
}

std::string normalize_subpath(const std::string& subpath,
                              const std::vector<std::string>& markers) {
  std::vector<std::string> segs = split_segments(subpath);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (const std::string& marker : markers) {
      if (segs[i] == marker) {
        return join_segments(segs, 0, i + 1);
      }
    }
  }
  return join_segments(segs, 0, segs.size());
}

DedupResult dedup(const std::vector<ManifestEntry>& manifest) {
  std::map<std::string, DedupGroup> groups;
  std::map<std::string, std::string> rejects;  // url -> error

  for (const ManifestEntry& entry : manifest) {
    try {
      RepoRef ref = parse_github_url(entry.url);
      DedupGroup& group = groups[ref.key()];
      group.key = ref.key();
      group.members.push_back(entry.url);
      group.source_tags[entry.source] += 1;
    } catch (const ScopeError& err) {
      rejects.emplace(entry.url, err.what());
    }
  }

  DedupResult result;
  for (auto& [key, group] : groups) {
    (void)key;
    std::sort(group.members.begin(), group.members.end());
    result.groups.push_back(std::move(group));
  }
  for (const auto& [url, error] : rejects) {
    result.rejects.push_back({url, error});
  }
  return result;
}

FilterDecision filter_programmatic(const fs::path& root) {
  std::error_code ec;
  if (!fs::is_directory(root, ec) || ec) {
    throw ScopeError(Errc::IoError, "not a readable directory: " + root.string());
  }

  const bool has_description = fs::is_regular_file(root / "SKILL.md", ec) && !ec;

  bool has_code = false;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end && !ec; it.increment(ec)) {
    if (!it->is_regular_file(ec)) continue;
    if (is_analyzable(language_from_path(it->path()))) {
      has_code = true;
      break;
    }
  }

  FilterDecision decision;
  decision.programmatic = has_description && has_code;
  if (decision.programmatic) {
    decision.reason = "ok";
  } else if (!has_description && !has_code) {
    decision.reason = "no SKILL.md at root; no analyzable implementation file";
  } else if (!has_description) {
    decision.reason = "no SKILL.md at root";
  } else {
    decision.reason = "no analyzable implementation file";
  }
  return decision;
}

std::vector<ManifestEntry> read_manifest(const std::string& text) {
  std::vector<ManifestEntry> entries;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = text.substr(start, nl == std::string::npos ? std::string::npos
                                                                  : nl - start);
    start = nl == std::string::npos ? text.size() : nl + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = line;
    stripped.erase(0, stripped.find_first_not_of(" \t"));
    if (stripped.empty()) continue;

    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object() || !record.contains("url") ||
        !record["url"].is_string()) {
      // Kept as a raw entry so dedup() can surface it as a reject.
      entries.push_back({line, ""});
      continue;
    }
    ManifestEntry entry;
    entry.url = record["url"].get<std::string>();
    if (record.contains("source") && record["source"].is_string()) {
      entry.source = record["source"].get<std::string>();
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

std::string dedup_report_json(const DedupResult& result) {
  json doc;
  doc["groups"] = json::array();
  for (const DedupGroup& group : result.groups) {
    json g;
    g["key"] = group.key;
    g["members"] = group.members;
    g["source_tags"] = json::object();
    for (const auto& [tag, count] : group.source_tags) {
      g["source_tags"][tag.empty() ? "(untagged)" : tag] = count;
    }
    doc["groups"].push_back(std::move(g));
  }
  doc["rejects"] = json::array();
  for (const DedupReject& reject : result.rejects) {
    doc["rejects"].push_back({{"error", reject.error}, {"url", reject.url}});
  }
  return doc.dump(2);
}

}  // namespace skillscope
