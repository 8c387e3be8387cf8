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

#include "skillscope/skill.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "skillscope/errors.hpp"

namespace skillscope {

namespace fs = std::filesystem;

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MissingDescription: return "MissingDescription";
    case Errc::NotProgrammatic: return "NotProgrammatic";
    case Errc::IoError: return "IoError";
    case Errc::NotGitHub: return "NotGitHub";
    case Errc::MalformedPath: return "MalformedPath";
    case Errc::TaxonomyInvalid: return "TaxonomyInvalid";
    case Errc::UnsupportedLanguage: return "UnsupportedLanguage";
    case Errc::EncodingError: return "EncodingError";
    case Errc::UnknownNode: return "UnknownNode";
    case Errc::AllFilesSkipped: return "AllFilesSkipped";
    case Errc::SchemaError: return "SchemaError";
    case Errc::LabelMismatch: return "LabelMismatch";
    case Errc::UnsupportedPattern: return "UnsupportedPattern";
    case Errc::TransportError: return "TransportError";
    case Errc::MalformedModelOutput: return "MalformedModelOutput";
    case Errc::ConfigError: return "ConfigError";
  }
  return "UnknownError";
}

const char* language_name(Language lang) {
  switch (lang) {
    case Language::Python: return "Python";
    case Language::JavaScript: return "JavaScript";
    case Language::TypeScript: return "TypeScript";
    case Language::Go: return "Go";
    case Language::Other: return "Other";
  }
  return "Other";
}

Language language_from_path(const fs::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".py") return Language::Python;
  if (ext == ".js") return Language::JavaScript;
  if (ext == ".ts") return Language::TypeScript;
  if (ext == ".go") return Language::Go;
  return Language::Other;
}

bool is_analyzable(Language lang) { return lang != Language::Other; }

std::string Description::declared_text() const {
  std::string out;
  for (const auto& [key, value] : frontmatter) {
    (void)key;
    out += value;
    out += '\n';
  }
  out += body;
  return out;
}

bool Skill::has_analyzable_file() const {
  return std::any_of(files.begin(), files.end(), [](const ImplementationFile& f) {
    return is_analyzable(f.language);
  });
}

namespace {

bool is_delimiter_line(const std::string& line) {
  std::string t = line;
  while (!t.empty() && (t.back() == '\r' || t.back() == ' ' || t.back() == '\t')) t.pop_back();
  return t == "---";
}

bool valid_frontmatter_key(const std::string& key) {
  if (key.empty()) return false;
  if (!(std::isalpha(static_cast<unsigned char>(key[0])) || key[0] == '_')) return false;
  for (char c : key) {
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')) return false;
  }
  return true;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

/// Replaces invalid UTF-8 sequences with U+FFFD. Returns true when any
/// replacement happened.
bool sanitize_utf8(const std::string& in, std::string* out) {
  bool replaced = false;
  out->clear();
  out->reserve(in.size());
  std::size_t i = 0;
  while (i < in.size()) {
    unsigned char c = static_cast<unsigned char>(in[i]);
    std::size_t len = 0;
    if (c < 0x80) len = 1;
    else if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    if (len == 0 || i + len > in.size()) {
      out->append("\xEF\xBF\xBD");
      replaced = true;
      ++i;
      continue;
    }
    bool ok = true;
    for (std::size_t k = 1; k < len; ++k) {
      if ((static_cast<unsigned char>(in[i + k]) & 0xC0) != 0x80) { ok = false; break; }
    }
    if (!ok) {
      out->append("\xEF\xBF\xBD");
      replaced = true;
      ++i;
      continue;
    }
    out->append(in, i, len);
    i += len;
  }
  return replaced;
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return lines;
}

}  // namespace

Description parse_skill_md(const std::string& text) {
  Description desc;
  desc.raw = text;

  std::string clean;
  if (sanitize_utf8(text, &clean)) {
    desc.warnings.push_back("invalid UTF-8 bytes replaced with U+FFFD");
  }

  const std::vector<std::string> lines = split_lines(clean);
  if (lines.empty() || !is_delimiter_line(lines[0])) {
    desc.body = clean;
    return desc;
  }

  std::size_t closing = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (is_delimiter_line(lines[i])) { closing = i; break; }
  }
  if (closing == 0) {
    desc.warnings.push_back("unclosed frontmatter block; treating whole file as body");
    desc.body = clean;
    return desc;
  }

  for (std::size_t i = 1; i < closing; ++i) {
    const std::string& line = lines[i];
    if (trim(line).empty()) continue;
    std::size_t colon = line.find(':');
    std::string key = colon == std::string::npos ? "" : trim(line.substr(0, colon));
    if (colon == std::string::npos || !valid_frontmatter_key(key)) {
      desc.warnings.push_back("ignored malformed frontmatter line " + std::to_string(i + 1));
      continue;
    }
    std::string value = trim(line.substr(colon + 1));
    if (desc.frontmatter.count(key)) {
      desc.warnings.push_back("duplicate frontmatter key '" + key + "'; last value wins");
    }
    desc.frontmatter[key] = value;
  }

  std::string body;
  for (std::size_t i = closing + 1; i < lines.size(); ++i) {
    body += lines[i];
    if (i + 1 < lines.size()) body += '\n';
  }
  desc.body = body;
  return desc;
}

namespace {

std::string read_file_or_throw(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ScopeError(Errc::IoError, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool looks_binary(const std::string& content) {
  const std::size_t probe = std::min<std::size_t>(content.size(), 8192);
  for (std::size_t i = 0; i < probe; ++i) {
    if (content[i] == '\0') return true;
  }
  return false;
}

std::string relative_posix(const fs::path& root, const fs::path& child) {
  std::string rel = child.lexically_relative(root).generic_string();
  return rel;
}

}  // namespace

Skill discover_skill(const fs::path& root, const DiscoverOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec) || ec) {
    throw ScopeError(Errc::IoError, "not a readable directory: " + root.string());
  }

  const fs::path skill_md = root / "SKILL.md";
  if (!fs::is_regular_file(skill_md, ec) || ec) {
    throw ScopeError(Errc::MissingDescription, "no SKILL.md at " + root.string());
  }

  Skill skill;
  skill.root = root.lexically_normal().generic_string();
  skill.id = options.id.empty()
                 ? root.lexically_normal().filename().generic_string()
                 : options.id;
  if (skill.id.empty()) skill.id = skill.root;
  skill.description = parse_skill_md(read_file_or_throw(skill_md));

  std::vector<fs::path> paths;
  for (fs::recursive_directory_iterator it(root, ec), end; it != end && !ec; it.increment(ec)) {
    if (it->is_regular_file(ec)) paths.push_back(it->path());
  }
  if (ec) {
    throw ScopeError(Errc::IoError, "walk failed under " + root.string() + ": " + ec.message());
  }
  std::sort(paths.begin(), paths.end(), [&](const fs::path& a, const fs::path& b) {
    return relative_posix(root, a) < relative_posix(root, b);
  });

  for (const fs::path& path : paths) {
    const std::string rel = relative_posix(root, path);
    if (path == skill_md) continue;
    if (path.filename() == "SKILL.md") {
      skill.skipped.push_back({rel, "nested skill descriptor"});
      continue;
    }
    std::error_code size_ec;
    const auto size = fs::file_size(path, size_ec);
    if (size_ec) {
      skill.skipped.push_back({rel, "unreadable: " + size_ec.message()});
      continue;
    }
    if (size > options.max_file_bytes) {
      skill.skipped.push_back({rel, "oversize (" + std::to_string(size) + " bytes)"});
      continue;
    }
    std::string content = read_file_or_throw(path);
    if (looks_binary(content)) {
      skill.skipped.push_back({rel, "binary content"});
      continue;
    }
    ImplementationFile file;
    file.path = rel;
    file.language = language_from_path(path);
    file.content = std::move(content);
    skill.files.push_back(std::move(file));
  }

  if (!skill.has_analyzable_file()) {
    throw ScopeError(Errc::NotProgrammatic,
                     "no analyzable implementation file under " + root.string());
  }
  return skill;
}

}  // namespace skillscope
