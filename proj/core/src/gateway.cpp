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

#include "skillscope/gateway.hpp"

#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <mutex>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "skillscope/errors.hpp"
#include "skillscope/prompt.hpp"

namespace skillscope {

using nlohmann::json;

GatewayConfig gateway_config_from_env() {
  GatewayConfig config;
  const char* endpoint = std::getenv("SKILLSCOPE_MODEL_ENDPOINT");
  const char* model = std::getenv("SKILLSCOPE_MODEL_NAME");
  const char* key = std::getenv("SKILLSCOPE_MODEL_KEY");
  if (endpoint == nullptr || *endpoint == '\0') {
    throw ScopeError(Errc::ConfigError, "SKILLSCOPE_MODEL_ENDPOINT is not set");
  }
  if (model == nullptr || *model == '\0') {
    throw ScopeError(Errc::ConfigError, "SKILLSCOPE_MODEL_NAME is not set");
  }
  config.endpoint = endpoint;
  config.model = model;
  if (key != nullptr) config.api_key = key;
  return config;
}

namespace {

struct ParsedEndpoint {
  std::string base;  // scheme://host[:port]
  std::string path;  // request path, defaults to /v1/chat/completions
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
  ParsedEndpoint parsed;
  std::size_t scheme = endpoint.find("://");
  if (scheme == std::string::npos) {
    throw ScopeError(Errc::ConfigError, "endpoint is not an absolute URL: " + endpoint);
  }
  std::size_t path_at = endpoint.find('/', scheme + 3);
  if (path_at == std::string::npos) {
    parsed.base = endpoint;
    parsed.path = "/v1/chat/completions";
  } else {
    parsed.base = endpoint.substr(0, path_at);
    parsed.path = endpoint.substr(path_at);
    if (parsed.path == "/") parsed.path = "/v1/chat/completions";
  }
  return parsed;
}

class HttpChatTransport : public ChatTransport {
 public:
  std::string complete(const GatewayConfig& config, const std::string& prompt) override {
    ParsedEndpoint endpoint = parse_endpoint(config.endpoint);

    httplib::Client client(endpoint.base);
    client.set_connection_timeout(30);
    client.set_read_timeout(300);

    httplib::Headers headers;
    if (!config.api_key.empty()) {
      headers.emplace("Authorization", "Bearer " + config.api_key);
    }

    json body;
    body["model"] = config.model;
    body["temperature"] = 0;
    body["messages"] = json::array({{{"role", "user"}, {"content", prompt}}});

    httplib::Result result =
        client.Post(endpoint.path, headers, body.dump(), "application/json");
    if (!result) {
      throw ScopeError(Errc::TransportError,
                       "request failed: " + httplib::to_string(result.error()));
    }
    if (result->status == 429 || result->status >= 500) {
      throw ScopeError(Errc::TransportError,
                       "server status " + std::to_string(result->status));
    }
    if (result->status != 200) {
      // Non-retryable protocol failure; surfaced as transport error without
      // retry by the gateway.
      throw ScopeError(Errc::TransportError,
                       "unexpected status " + std::to_string(result->status) + ": " +
                           result->body.substr(0, 200));
    }

    json reply = json::parse(result->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("choices") || reply["choices"].empty()) {
      throw ScopeError(Errc::TransportError, "reply carries no choices");
    }
    const json& message = reply["choices"][0].value("message", json::object());
    if (!message.contains("content") || !message["content"].is_string()) {
      throw ScopeError(Errc::TransportError, "reply carries no message content");
    }
    return message["content"].get<std::string>();
  }
};

}  // namespace

std::unique_ptr<ChatTransport> make_http_transport() {
  return std::make_unique<HttpChatTransport>();
}

// Bounded in-flight requests plus optional spacing between request starts.
struct ModelGateway::Limiter {
  std::mutex mutex;
  std::condition_variable cv;
  int in_flight = 0;
  std::chrono::steady_clock::time_point last_start{};

  void acquire(const GatewayConfig& config) {
    std::unique_lock<std::mutex> lock(mutex);
    cv.wait(lock, [&] { return in_flight < config.max_in_flight; });
    ++in_flight;
    if (config.min_interval_ms > 0) {
      auto now = std::chrono::steady_clock::now();
      auto next = last_start + std::chrono::milliseconds(config.min_interval_ms);
      if (next > now) {
        lock.unlock();
        std::this_thread::sleep_for(next - now);
        lock.lock();
      }
      last_start = std::chrono::steady_clock::now();
    }
  }

  void release() {
    {
      std::lock_guard<std::mutex> lock(mutex);
      --in_flight;
    }
    cv.notify_one();
  }
};

ModelGateway::ModelGateway(GatewayConfig config, std::shared_ptr<ChatTransport> transport)
    : config_(std::move(config)),
      transport_(std::move(transport)),
      limiter_(std::make_shared<Limiter>()) {}

ClassifyResult ModelGateway::check_with_model(const Taxonomy& taxonomy,
                                              const std::string& skill_md_raw,
                                              const std::string& graph_json) {
  std::string prompt = render_prompt(taxonomy, skill_md_raw, graph_json);

  std::string content;
  int attempt = 0;
  while (true) {
    ++attempt;
    limiter_->acquire(config_);
    try {
      content = transport_->complete(config_, prompt);
      limiter_->release();
      break;
    } catch (const ScopeError& err) {
      limiter_->release();
      if (err.code() != Errc::TransportError || attempt >= config_.max_retries) throw;
      std::this_thread::sleep_for(
          std::chrono::milliseconds(config_.backoff_initial_ms << (attempt - 1)));
    }
  }

  try {
    ClassifyResult result = parse_check_report(content, taxonomy);
    result.report.backend = "model:" + config_.model;
    result.verdict = derive_verdict(result.report);
    return result;
  } catch (const ScopeError& err) {
    if (err.code() != Errc::MalformedModelOutput) throw;
    ClassifyResult result = uncertain_result(
        std::string("malformed model output: ") + err.what(), "model:" + config_.model);
    return result;
  }
}

}  // namespace skillscope
