// Copyright 2026 The Roboforge Authors.
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

#ifndef ROBOFORGE_LLM_GATEWAY_HPP_
#define ROBOFORGE_LLM_GATEWAY_HPP_

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace roboforge {

struct ChatMessage {
  std::string role;  // system, user or assistant
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

inline constexpr double kDefaultTemperature = 0.2;

struct ChatRequest {
  std::string model_id;
  std::vector<ChatMessage> messages;
  double temperature = kDefaultTemperature;
  int max_tokens = 4096;

  friend bool operator==(const ChatRequest&, const ChatRequest&) = default;
};

struct Usage {
  int prompt_tokens = 0;
  int completion_tokens = 0;

  friend bool operator==(const Usage&, const Usage&) = default;
};

struct ChatResponse {
  std::string content;
  std::string model_id;
  Usage usage;
  double latency_ms = 0.0;
};

// Throws ValidationError.
void validate_request(const ChatRequest& request);

struct LiveMode {
  std::string endpoint;        // full URL of the chat-completions route
  std::string credential_env;  // environment variable holding the API key; may be empty
};

struct RecordMode {
  std::string endpoint;
  std::string credential_env;
  std::filesystem::path fixture_dir;
};

struct ReplayMode {
  std::filesystem::path fixture_dir;
};

using GatewayMode = std::variant<LiveMode, RecordMode, ReplayMode>;

std::string_view mode_name(const GatewayMode& mode);

// SHA-256 (hex) of the canonical form [model_id, [[role, content]...]] with
// trailing whitespace stripped from each content.
std::string fixture_key(const ChatRequest& request);

nlohmann::json request_to_json(const ChatRequest& request);
ChatRequest request_from_json(const nlohmann::json& j);
nlohmann::json response_to_json(const ChatResponse& response);
ChatResponse response_from_json(const nlohmann::json& j);

struct HttpResponse {
  int status = 0;
  std::string body;
};

class Transport {
 public:
  virtual ~Transport() = default;
  // Throws TransportError when no HTTP response was obtained.
  virtual HttpResponse post(const std::string& url, const std::multimap<std::string, std::string>& headers,
                            const std::string& body) = 0;
};

class HttpTransport : public Transport {
 public:
  explicit HttpTransport(std::chrono::seconds timeout = std::chrono::seconds(120)) : timeout_(timeout) {}
  HttpResponse post(const std::string& url, const std::multimap<std::string, std::string>& headers,
                    const std::string& body) override;

 private:
  std::chrono::seconds timeout_;
};

struct RetryPolicy {
  int retries = 3;
  std::chrono::milliseconds base_delay{500};
  double factor = 2.0;

  // Delay before retry number `attempt` (1-based).
  std::chrono::milliseconds delay(int attempt) const;
};

// One file per key; body is a short metadata header, a blank line, then the
// content verbatim. Writes are serialized.
class FixtureStore {
 public:
  explicit FixtureStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

  const std::filesystem::path& dir() const { return dir_; }
  std::optional<ChatResponse> load(const std::string& key) const;
  void save(const std::string& key, const ChatResponse& response);

 private:
  std::filesystem::path dir_;
  std::mutex write_mutex_;
};

std::string format_fixture(const ChatResponse& response);
ChatResponse parse_fixture(std::string_view text);

class LlmGateway {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  // A null transport means HttpTransport. Replay mode requires an existing
  // fixture directory (ValidationError otherwise) and never touches the
  // transport.
  explicit LlmGateway(GatewayMode mode, std::shared_ptr<Transport> transport = nullptr,
                      RetryPolicy retry = {}, Sleeper sleeper = {});

  const GatewayMode& mode() const { return mode_; }

  // Safe to call concurrently.
  ChatResponse complete(const ChatRequest& request);

 private:
  ChatResponse send(const ChatRequest& request, const std::string& endpoint, const std::string& credential_env);

  GatewayMode mode_;
  std::shared_ptr<Transport> transport_;
  RetryPolicy retry_;
  Sleeper sleeper_;
  std::unique_ptr<FixtureStore> store_;
};

}  // namespace roboforge

#endif  // ROBOFORGE_LLM_GATEWAY_HPP_
