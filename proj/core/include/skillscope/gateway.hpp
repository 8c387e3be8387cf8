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

#include <memory>
#include <string>

#include "skillscope/checker.hpp"

namespace skillscope {

/// Configuration for the chat-completions-style model backend. Read from
/// SKILLSCOPE_MODEL_ENDPOINT, SKILLSCOPE_MODEL_NAME, SKILLSCOPE_MODEL_KEY.
struct GatewayConfig {
  std::string endpoint;
  std::string model;
  std::string api_key;
  int max_in_flight = 4;
  int max_retries = 3;        // transport attempts per logical call
  int backoff_initial_ms = 250;
  int min_interval_ms = 0;    // shared rate limiter spacing between request starts
};

/// Throws ScopeError(ConfigError) when the endpoint or model name is unset.
GatewayConfig gateway_config_from_env();

/// Transport seam: one completion request, returning the assistant text.
/// Implementations throw ScopeError(TransportError) on failures that are
/// worth retrying and must not retry internally.
class ChatTransport {
 public:
  virtual ~ChatTransport() = default;
  virtual std::string complete(const GatewayConfig& config, const std::string& prompt) = 0;
};

/// HTTP implementation posting an OpenAI-style chat completion request to
/// the configured endpoint.
std::unique_ptr<ChatTransport> make_http_transport();

/// Model-backed checking: renders the audit prompt, makes one logical model
/// call per skill (temperature 0), bounded retries on transport errors
/// only, and parses the structured reply. Malformed replies map to an
/// Uncertain result with the cause recorded; transport failure after
/// retries throws ScopeError(TransportError).
class ModelGateway {
 public:
  ModelGateway(GatewayConfig config, std::shared_ptr<ChatTransport> transport);

  ClassifyResult check_with_model(const Taxonomy& taxonomy, const std::string& skill_md_raw,
                                  const std::string& graph_json);

  const GatewayConfig& config() const { return config_; }

 private:
  GatewayConfig config_;
  std::shared_ptr<ChatTransport> transport_;
  struct Limiter;
  std::shared_ptr<Limiter> limiter_;
};

}  // namespace skillscope
