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

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "roboforge/error.hpp"
#include "roboforge/llm_gateway.hpp"
#include "roboforge/stub_provider.hpp"

namespace roboforge {
namespace {

namespace fs = std::filesystem;

ChatRequest request(std::string model = "m", std::string user = "hello") {
  ChatRequest r;
  r.model_id = std::move(model);
  r.messages = {{"system", "be brief"}, {"user", std::move(user)}};
  return r;
}

fs::path fresh_dir(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("roboforge_gw_" + name + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

class ScriptedTransport : public Transport {
 public:
  std::vector<std::function<HttpResponse()>> script;
  int calls = 0;
  HttpResponse post(const std::string&, const std::multimap<std::string, std::string>&, const std::string&) override {
    auto& step = script.at(std::min<std::size_t>(calls, script.size() - 1));
    ++calls;
    return step();
  }
};

class ExplodingTransport : public Transport {
 public:
  HttpResponse post(const std::string&, const std::multimap<std::string, std::string>&, const std::string&) override {
    ADD_FAILURE() << "transport used";
    throw TransportError("no network in replay");
  }
};

HttpResponse ok_body(const std::string& content) {
  nlohmann::json j = {{"model", "m"},
                      {"choices", {{{"message", {{"role", "assistant"}, {"content", content}}}}}},
                      {"usage", {{"prompt_tokens", 3}, {"completion_tokens", 4}}}};
  return {200, j.dump()};
}

TEST(FixtureKey, Properties) {
  EXPECT_EQ(fixture_key(request()), fixture_key(request()));
  EXPECT_NE(fixture_key(request("a")), fixture_key(request("b")));
  EXPECT_EQ(fixture_key(request("m", "abc ")), fixture_key(request("m", "abc")));
  EXPECT_EQ(fixture_key(request("m", "abc\n\t")), fixture_key(request("m", "abc")));
  EXPECT_NE(fixture_key(request("m", " abc")), fixture_key(request("m", "abc")));
  auto swapped = request();
  std::swap(swapped.messages[0], swapped.messages[1]);
  EXPECT_NE(fixture_key(swapped), fixture_key(request()));
  auto role = request();
  role.messages[0].role = "user";
  EXPECT_NE(fixture_key(role), fixture_key(request()));
  auto temp = request();
  temp.temperature = 1.5;
  EXPECT_EQ(fixture_key(temp), fixture_key(request()));
  EXPECT_EQ(fixture_key(request()).size(), 64u);
}

TEST(Request, Validation) {
  EXPECT_NO_THROW(validate_request(request()));
  auto empty = request();
  empty.messages.clear();
  EXPECT_THROW(validate_request(empty), ValidationError);
  auto first = request();
  first.messages[0].role = "assistant";
  EXPECT_THROW(validate_request(first), ValidationError);
  auto hot = request();
  hot.temperature = 2.5;
  EXPECT_THROW(validate_request(hot), ValidationError);
  auto tokens = request();
  tokens.max_tokens = 0;
  EXPECT_THROW(validate_request(tokens), ValidationError);
  EXPECT_DOUBLE_EQ(request().temperature, 0.2);
}

TEST(Request, WireFormat) {
  auto j = request_to_json(request());
  EXPECT_EQ(j.at("model"), "m");
  EXPECT_EQ(j.at("messages").size(), 2u);
  EXPECT_EQ(j.at("messages")[1].at("content"), "hello");
  EXPECT_EQ(request_from_json(j), request());
}

TEST(Fixture, FormatRoundTrip) {
  ChatResponse r{"line one\n\nline three\n", "m", {12, 34}, 0.0};
  auto back = parse_fixture(format_fixture(r));
  EXPECT_EQ(back.content, r.content);
  EXPECT_EQ(back.model_id, "m");
  EXPECT_EQ(back.usage.prompt_tokens, 12);
  EXPECT_EQ(back.usage.completion_tokens, 34);
}

TEST(Gateway, ReplayHitAndMiss) {
  const auto dir = fresh_dir("replay");
  FixtureStore store(dir);
  store.save(fixture_key(request()), {"stored content", "m", {1, 2}, 123.0});
  LlmGateway gw(ReplayMode{dir}, std::make_shared<ExplodingTransport>());
  auto r = gw.complete(request());
  EXPECT_EQ(r.content, "stored content");
  EXPECT_EQ(r.latency_ms, 0.0);
  const auto missing = request("m", "other");
  try {
    gw.complete(missing);
    FAIL() << "expected FixtureMissingError";
  } catch (const FixtureMissingError& e) {
    EXPECT_EQ(e.key(), fixture_key(missing));
    EXPECT_NE(std::string(e.what()).find(e.key()), std::string::npos);
  }
}

TEST(Gateway, ReplayNeedsExistingDirectory) {
  EXPECT_THROW(LlmGateway(ReplayMode{"/nonexistent/roboforge/fixtures"}), ValidationError);
}

TEST(Gateway, RecordThenReplayAgainstStubServer) {
  const auto dir = fresh_dir("record");
  StubChatServer server;
  ChatRequest req = request(std::string(kStubCareful), "Design a robot arm system for the Rehabilitation Therapy task.");
  req.messages[0].content = "You are the Task Analyst of a robot design team.";
  ChatResponse recorded;
  {
    LlmGateway gw(RecordMode{server.endpoint(), "", dir});
    recorded = gw.complete(req);
  }
  EXPECT_EQ(server.request_count(), 1);
  EXPECT_FALSE(recorded.content.empty());
  EXPECT_TRUE(fs::exists(dir / fixture_key(req)));
  LlmGateway replay(ReplayMode{dir}, std::make_shared<ExplodingTransport>());
  auto again = replay.complete(req);
  EXPECT_EQ(again.content, recorded.content);
  EXPECT_EQ(server.request_count(), 1);
}

TEST(Gateway, LiveAgainstStubServer) {
  StubChatServer server;
  LlmGateway gw(LiveMode{server.endpoint(), ""});
  auto r = gw.complete(request());
  EXPECT_EQ(server.request_count(), 1);
  EXPECT_GE(r.latency_ms, 0.0);
}

TEST(Gateway, RetriesTransportFailuresWithBackoff) {
  auto t = std::make_shared<ScriptedTransport>();
  t->script = {[]() -> HttpResponse { throw TransportError("reset"); },
               []() -> HttpResponse { throw TransportError("reset"); }, [] { return ok_body("fine"); }};
  std::vector<std::chrono::milliseconds> delays;
  LlmGateway gw(LiveMode{"http://unused/v1/chat/completions", ""}, t, RetryPolicy{},
                [&](std::chrono::milliseconds d) { delays.push_back(d); });
  EXPECT_EQ(gw.complete(request()).content, "fine");
  EXPECT_EQ(t->calls, 3);
  EXPECT_EQ(delays, (std::vector<std::chrono::milliseconds>{std::chrono::milliseconds(500), std::chrono::milliseconds(1000)}));
}

TEST(Gateway, RetriesAreBounded) {
  auto t = std::make_shared<ScriptedTransport>();
  t->script = {[]() -> HttpResponse { throw TransportError("down"); }};
  std::vector<std::chrono::milliseconds> delays;
  RetryPolicy policy;
  LlmGateway gw(LiveMode{"http://unused/x", ""}, t, policy, [&](auto d) { delays.push_back(d); });
  EXPECT_THROW(gw.complete(request()), TransportError);
  EXPECT_EQ(t->calls, policy.retries + 1);
  ASSERT_EQ(static_cast<int>(delays.size()), policy.retries);
  EXPECT_TRUE(std::is_sorted(delays.begin(), delays.end()));
}

TEST(Gateway, ProviderErrorsAreNotRetried) {
  auto t = std::make_shared<ScriptedTransport>();
  t->script = {[] { return HttpResponse{429, "slow down"}; }};
  LlmGateway gw(LiveMode{"http://unused/x", ""}, t, RetryPolicy{}, [](auto) {});
  try {
    gw.complete(request());
    FAIL() << "expected ProviderError";
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.status(), 429);
    EXPECT_EQ(e.body(), "slow down");
  }
  EXPECT_EQ(t->calls, 1);
  t->script = {[] { return HttpResponse{200, "not json"}; }};
  EXPECT_THROW(gw.complete(request()), ProviderError);
}

TEST(Gateway, SendsBearerFromEnvironment) {
  class Capture : public Transport {
   public:
    std::multimap<std::string, std::string> headers;
    HttpResponse post(const std::string&, const std::multimap<std::string, std::string>& h, const std::string&) override {
      headers = h;
      return ok_body("x");
    }
  };
  auto t = std::make_shared<Capture>();
  ::setenv("ROBOFORGE_TEST_KEY", "sk-test", 1);
  LlmGateway gw(LiveMode{"http://unused/x", "ROBOFORGE_TEST_KEY"}, t);
  gw.complete(request());
  ASSERT_EQ(t->headers.count("Authorization"), 1u);
  EXPECT_EQ(t->headers.find("Authorization")->second, "Bearer sk-test");
}

TEST(Gateway, ConcurrentRecordWrites) {
  class Echo : public Transport {
   public:
    std::atomic<int> calls{0};
    HttpResponse post(const std::string&, const std::multimap<std::string, std::string>&, const std::string& body) override {
      ++calls;
      return ok_body(nlohmann::json::parse(body).at("messages").back().at("content").get<std::string>());
    }
  };
  const auto dir = fresh_dir("concurrent");
  auto t = std::make_shared<Echo>();
  LlmGateway gw(RecordMode{"http://unused/x", "", dir}, t);
  std::vector<std::thread> pool;
  std::atomic<int> ok{0};
  for (int i = 0; i < 8; ++i) {
    pool.emplace_back([&, i] {
      for (int k = 0; k < 10; ++k) {
        const std::string q = "q" + std::to_string((i * 10 + k) % 13);
        if (gw.complete(request("m", q)).content == q) ++ok;
      }
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(ok.load(), 80);
  EXPECT_EQ(t->calls.load(), 80);
  EXPECT_EQ(std::distance(fs::directory_iterator(dir), fs::directory_iterator{}), 13);
  LlmGateway replay(ReplayMode{dir}, std::make_shared<ExplodingTransport>());
  for (int q = 0; q < 13; ++q) EXPECT_EQ(replay.complete(request("m", "q" + std::to_string(q))).content, "q" + std::to_string(q));
}

}  // namespace
}  // namespace roboforge
