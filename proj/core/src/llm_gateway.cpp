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

#include "roboforge/llm_gateway.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <thread>

#include <fmt/format.h>
#include <httplib.h>
#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "roboforge/error.hpp"
#include "roboforge/text.hpp"

namespace roboforge {

using nlohmann::json;

void validate_request(const ChatRequest& request) {
  if (request.model_id.empty()) throw ValidationError("request: model_id empty");
  if (request.messages.empty()) throw ValidationError("request: messages empty");
  for (const auto& m : request.messages) {
    if (m.role != "system" && m.role != "user" && m.role != "assistant") {
      throw ValidationError(fmt::format("request: unknown role '{}'", m.role));
    }
  }
  if (request.messages.front().role == "assistant") {
    throw ValidationError("request: first message must be system or user");
  }
  if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
    throw ValidationError("request: temperature must be in [0, 2]");
  }
  if (request.max_tokens < 1) throw ValidationError("request: max_tokens must be positive");
}

std::string_view mode_name(const GatewayMode& mode) {
  switch (mode.index()) {
    case 0: return "live";
    case 1: return "record";
    default: return "replay";
  }
}

std::string fixture_key(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({m.role, text::rtrim(m.content)});
  const std::string canonical = json::array({request.model_id, messages}).dump();

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(canonical.data(), canonical.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("fixture_key: SHA-256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

json request_to_json(const ChatRequest& request) {
  json messages = json::array();
  for (const auto& m : request.messages) messages.push_back({{"role", m.role}, {"content", m.content}});
  return {{"model", request.model_id},
          {"messages", messages},
          {"temperature", request.temperature},
          {"max_tokens", request.max_tokens}};
}

ChatRequest request_from_json(const json& j) {
  ChatRequest r;
  r.model_id = j.at("model").get<std::string>();
  for (const auto& m : j.at("messages")) {
    r.messages.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
  }
  r.temperature = j.value("temperature", kDefaultTemperature);
  r.max_tokens = j.value("max_tokens", 4096);
  return r;
}

json response_to_json(const ChatResponse& response) {
  return {{"content", response.content},
          {"model_id", response.model_id},
          {"prompt_tokens", response.usage.prompt_tokens},
          {"completion_tokens", response.usage.completion_tokens},
          {"latency_ms", response.latency_ms}};
}

ChatResponse response_from_json(const json& j) {
  ChatResponse r;
  r.content = j.at("content").get<std::string>();
  r.model_id = j.value("model_id", "");
  r.usage.prompt_tokens = j.value("prompt_tokens", 0);
  r.usage.completion_tokens = j.value("completion_tokens", 0);
  r.latency_ms = j.value("latency_ms", 0.0);
  return r;
}

namespace {

struct Url {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Url split_url(const std::string& url) {
  static const std::regex re(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(url, m, re)) throw TransportError(fmt::format("invalid endpoint URL '{}'", url));
  return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

HttpResponse HttpTransport::post(const std::string& url, const std::multimap<std::string, std::string>& headers,
                                 const std::string& body) {
  Url u = split_url(url);
  httplib::Client client(u.origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  client.set_write_timeout(timeout_);
  httplib::Headers h(headers.begin(), headers.end());
  auto res = client.Post(u.path, h, body, "application/json");
  if (!res) throw TransportError(fmt::format("POST {} failed: {}", url, httplib::to_string(res.error())));
  return {res->status, res->body};
}

std::chrono::milliseconds RetryPolicy::delay(int attempt) const {
  const double ms = static_cast<double>(base_delay.count()) * std::pow(factor, attempt - 1);
  return std::chrono::milliseconds(static_cast<long long>(std::llround(ms)));
}

std::string format_fixture(const ChatResponse& response) {
  return fmt::format("model_id: {}\nprompt_tokens: {}\ncompletion_tokens: {}\n\n{}", response.model_id,
                     response.usage.prompt_tokens, response.usage.completion_tokens, response.content);
}

ChatResponse parse_fixture(std::string_view text) {
  const auto split = text.find("\n\n");
  if (split == std::string_view::npos) throw ParseError("fixture: missing header separator");
  ChatResponse r;
  for (const auto& line : text::split_lines(text.substr(0, split))) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(fmt::format("fixture: bad header line '{}'", line));
    const std::string key(text::trim(line.substr(0, colon)));
    const std::string value(text::trim(line.substr(colon + 1)));
    try {
      if (key == "model_id") r.model_id = value;
      else if (key == "prompt_tokens") r.usage.prompt_tokens = std::stoi(value);
      else if (key == "completion_tokens") r.usage.completion_tokens = std::stoi(value);
    } catch (const std::exception&) {
      throw ParseError(fmt::format("fixture: bad value for '{}'", key));
    }
  }
  r.content = std::string(text.substr(split + 2));
  return r;
}

std::optional<ChatResponse> FixtureStore::load(const std::string& key) const {
  std::ifstream in(dir_ / key, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  ChatResponse r = parse_fixture(ss.str());
  r.latency_ms = 0.0;
  return r;
}

void FixtureStore::save(const std::string& key, const ChatResponse& response) {
  std::lock_guard lock(write_mutex_);
  std::filesystem::create_directories(dir_);
  const auto tmp = dir_ / (key + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::filesystem::filesystem_error("cannot write fixture", tmp, std::make_error_code(std::errc::io_error));
    out << format_fixture(response);
  }
  std::filesystem::rename(tmp, dir_ / key);
}

LlmGateway::LlmGateway(GatewayMode mode, std::shared_ptr<Transport> transport, RetryPolicy retry, Sleeper sleeper)
    : mode_(std::move(mode)), transport_(std::move(transport)), retry_(retry), sleeper_(std::move(sleeper)) {
  if (!sleeper_) sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  if (const auto* replay = std::get_if<ReplayMode>(&mode_)) {
    if (!std::filesystem::is_directory(replay->fixture_dir)) {
      throw ValidationError(fmt::format("replay fixture directory does not exist: {}", replay->fixture_dir.string()));
    }
    store_ = std::make_unique<FixtureStore>(replay->fixture_dir);
  } else {
    if (const auto* record = std::get_if<RecordMode>(&mode_)) store_ = std::make_unique<FixtureStore>(record->fixture_dir);
    if (!transport_) transport_ = std::make_shared<HttpTransport>();
  }
}

ChatResponse LlmGateway::send(const ChatRequest& request, const std::string& endpoint,
                              const std::string& credential_env) {
  std::multimap<std::string, std::string> headers;
  if (!credential_env.empty()) {
    if (const char* key = std::getenv(credential_env.c_str()); key != nullptr && *key != '\0') {
      headers.emplace("Authorization", fmt::format("Bearer {}", key));
    }
  }
  const std::string body = request_to_json(request).dump();
  for (int attempt = 0;; ++attempt) {
    const auto start = std::chrono::steady_clock::now();
    HttpResponse res;
    try {
      res = transport_->post(endpoint, headers, body);
    } catch (const TransportError&) {
      if (attempt >= retry_.retries) throw;
      sleeper_(retry_.delay(attempt + 1));
      continue;
    }
    const double latency = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (res.status >= 400) throw ProviderError(res.status, res.body);
    ChatResponse out;
    try {
      const json j = json::parse(res.body);
      const auto& content = j.at("choices").at(0).at("message").at("content");
      out.content = content.is_null() ? std::string() : content.get<std::string>();
      out.model_id = j.value("model", request.model_id);
      if (j.contains("usage") && j["usage"].is_object()) {
        out.usage.prompt_tokens = j["usage"].value("prompt_tokens", 0);
        out.usage.completion_tokens = j["usage"].value("completion_tokens", 0);
      }
    } catch (const json::exception& e) {
      throw ProviderError(res.status, fmt::format("malformed response body ({}): {}", e.what(), res.body));
    }
    out.latency_ms = latency;
    return out;
  }
}

ChatResponse LlmGateway::complete(const ChatRequest& request) {
  validate_request(request);
  if (std::holds_alternative<ReplayMode>(mode_)) {
    const std::string key = fixture_key(request);
    auto hit = store_->load(key);
    if (!hit) throw FixtureMissingError(key);
    return *hit;
  }
  if (const auto* live = std::get_if<LiveMode>(&mode_)) return send(request, live->endpoint, live->credential_env);
  const auto& record = std::get<RecordMode>(mode_);
  ChatResponse r = send(request, record.endpoint, record.credential_env);
  store_->save(fixture_key(request), r);
  return r;
}

}  // namespace roboforge
