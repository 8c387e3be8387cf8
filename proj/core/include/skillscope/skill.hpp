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

#include <cstddef>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace skillscope {

enum class Language { Python, JavaScript, TypeScript, Go, Other };

const char* language_name(Language lang);

/// Maps a path suffix to a language. Only `.py`, `.js`, `.ts`, `.go` are
/// recognized; everything else is Other.
Language language_from_path(const std::filesystem::path& path);

bool is_analyzable(Language lang);

/// Parsed view of a SKILL.md file. `raw` always holds the input verbatim;
/// the frontmatter map and body are best-effort and never fatal.
struct Description {
  std::map<std::string, std::string> frontmatter;
  std::string body;
  std::string raw;
  std::vector<std::string> warnings;

  /// Frontmatter values followed by the body, newline-joined. This is the
  /// text the consistency checker treats as the declared scope.
  std::string declared_text() const;
};

struct ImplementationFile {
  std::string path;  // repository-relative, '/'-separated
  Language language = Language::Other;
  std::string content;
};

struct SkippedFile {
  std::string path;
  std::string reason;
};

struct Skill {
  std::string id;
  std::string root;
  Description description;
  std::vector<ImplementationFile> files;
  std::vector<SkippedFile> skipped;

  bool has_analyzable_file() const;
};

/// Splits a SKILL.md text into frontmatter (`key: value` lines between the
/// first two `---` delimiter lines) and body. Malformed frontmatter degrades
/// to body-only parsing with warnings; invalid UTF-8 is replaced and noted.
Description parse_skill_md(const std::string& text);

struct DiscoverOptions {
  std::size_t max_file_bytes = 2 * 1024 * 1024;
  /// Override for the skill id; defaults to the root directory's name.
  std::string id;
};

/// Loads a skill from disk: SKILL.md at the root (exact, case-sensitive
/// name) plus every other file classified by suffix. File order is
/// normalized by lexicographic path sort, so repeated runs over an
/// unchanged tree produce equal Skills.
///
/// Throws ScopeError with MissingDescription, NotProgrammatic, or IoError.
Skill discover_skill(const std::filesystem::path& root,
                     const DiscoverOptions& options = {});

}  // namespace skillscope
