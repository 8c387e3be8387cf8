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

#include <stdexcept>
#include <string>

namespace skillscope {

/// Error codes shared across the library. Most operations degrade to
/// warnings instead of throwing; these cover the genuinely fatal cases.
enum class Errc {
  MissingDescription,
  NotProgrammatic,
  IoError,
  NotGitHub,
  MalformedPath,
  TaxonomyInvalid,
  UnsupportedLanguage,
  EncodingError,
  UnknownNode,
  AllFilesSkipped,
  SchemaError,
  LabelMismatch,
  UnsupportedPattern,
  TransportError,
  MalformedModelOutput,
  ConfigError,
};

const char* errc_name(Errc code);

class ScopeError : public std::runtime_error {
 public:
  ScopeError(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace skillscope
