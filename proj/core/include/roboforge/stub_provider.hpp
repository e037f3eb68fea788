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

#ifndef ROBOFORGE_STUB_PROVIDER_HPP_
#define ROBOFORGE_STUB_PROVIDER_HPP_

#include <atomic>
#include <memory>
#include <string>
#include <string_view>
#include <thread>

#include "roboforge/llm_gateway.hpp"

namespace roboforge {

// Deterministic stand-ins for chat models, used to record the shipped replay
// fixtures and in tests. The agent role is read from the system prompt.
//   stub-careful: optimal design with the default reach reserve, PPO.
//   stub-hasty:   one robot on the first base with repeated longest links
//                 (feasible but oversized), declares SAC.
inline constexpr std::string_view kStubCareful = "stub-careful";
inline constexpr std::string_view kStubHasty = "stub-hasty";

std::string stub_completion(const ChatRequest& request);

// Serves stub_completion over the chat-completions wire protocol on
// 127.0.0.1 (any path). Runs until destroyed.
class StubChatServer {
 public:
  StubChatServer();
  ~StubChatServer();
  StubChatServer(const StubChatServer&) = delete;
  StubChatServer& operator=(const StubChatServer&) = delete;

  // Endpoint URL of the chat-completions route.
  std::string endpoint() const;
  int port() const { return port_; }
  int request_count() const { return requests_.load(); }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

}  // namespace roboforge

#endif  // ROBOFORGE_STUB_PROVIDER_HPP_
