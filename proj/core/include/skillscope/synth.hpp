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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "skillscope/eval.hpp"

namespace skillscope {

/// Labeled corpus pattern classes: six inconsistency shapes, six
/// coarser-description shapes, plus consistent fillers.
///   IC1 credential read forwarded to an external service, undeclared
///   IC2 local persistence/state write, undeclared
///   IC3 user input flowing into command execution, undeclared
///   IC4 external platform integration, undeclared
///   IC5 behavior the description explicitly rules out
///   IC6 local execution / dependency expansion, undeclared
///   LU1 concrete output paths under declared file handling
///   LU2 minor implementation-side details under broad alignment
///   LU3 logging detail next to declared read/write work
///   LU4 cache handling under a declared capability
///   LU5 health-check endpoint as a small extra node
///   LU6 directory scaffolding under a declared workflow
enum class SynthPattern {
  IC1, IC2, IC3, IC4, IC5, IC6,
  LU1, LU2, LU3, LU4, LU5, LU6,
  Consistent,
};

const char* synth_pattern_name(SynthPattern pattern);
std::optional<SynthPattern> synth_pattern_from_name(const std::string& name);

/// Expected verdict class for a pattern.
GtClass synth_pattern_class(SynthPattern pattern);

struct CorpusSpec {
  std::map<SynthPattern, int> counts;

  /// Three of each IC and LU pattern plus six consistent skills (42 total).
  static CorpusSpec full_coverage();

  /// Parses `{"IC1": 3, "Consistent": 6, ...}`. Throws
  /// ScopeError(UnsupportedPattern) on unknown keys.
  static CorpusSpec from_json(const std::string& text);
};

/// Writes `counts[pattern]` skills per pattern under `out_dir`, one
/// directory per skill, and returns their labels (also written to
/// `out_dir/ground_truth.jsonl`). Deterministic for a fixed seed:
/// running twice produces byte-identical trees.
std::vector<GroundTruthLabel> generate_synthetic_corpus(
    std::uint64_t seed, const CorpusSpec& spec, const std::filesystem::path& out_dir);

}  // namespace skillscope
