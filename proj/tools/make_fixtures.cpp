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

// Regenerates the shipped replay fixtures by recording every pipeline run of
// both studies against the local stub provider.
//
//   make_fixtures <fixture_dir>

#include <iostream>

#include "roboforge/pipeline.hpp"
#include "roboforge/scenario.hpp"
#include "roboforge/stub_provider.hpp"

int main(int argc, char** argv) {
  using namespace roboforge;
  if (argc != 2) {
    std::cerr << "usage: make_fixtures <fixture_dir>\n";
    return 2;
  }
  StubChatServer server;
  LlmGateway gateway(RecordMode{server.endpoint(), "", argv[1]});
  PipelineOptions options;
  options.execute = false;
  int runs = 0;
  for (const std::string_view model : {kStubCareful, kStubHasty}) {
    for (const auto& s : builtin_scenarios()) {
      for (const auto& c : ablation_conditions()) {
        run_pipeline(s, c.config, gateway, std::string(model), options);
        ++runs;
      }
    }
    for (const auto& c : ablation_conditions()) {
      run_pipeline(example_scenario(), c.config, gateway, std::string(model), options);
      ++runs;
    }
  }
  std::cout << runs << " runs, " << server.request_count() << " requests recorded\n";
  return 0;
}
