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

#ifndef ROBOFORGE_HARNESS_HPP_
#define ROBOFORGE_HARNESS_HPP_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "roboforge/llm_gateway.hpp"
#include "roboforge/pipeline.hpp"
#include "roboforge/scoring.hpp"

namespace roboforge {

struct HarnessOptions {
  std::vector<std::string> models;
  GatewayMode mode = ReplayMode{};
  PipelineOptions pipeline;
  std::optional<std::filesystem::path> runs_root;  // save every run when set
  unsigned threads = 1;
  std::vector<ManualOverride> overrides;
};

struct ScoreMatrix {
  std::string study;  // "generalization" or "ablation"
  std::vector<ScoreCard> cards;
  std::vector<AggregateRow> by_model;
};

// All ten scenarios at Normal length, no disables, per model.
ScoreMatrix run_generalization(const HarnessOptions& options);

// The example scenario under the nine conditions (three lengths, six
// disable sets), per model.
ScoreMatrix run_ablation(const HarnessOptions& options);

// run_id,model,key,tcp,cef,ma,rda,rm,rda_provenance,rm_provenance
std::string scores_csv(const std::vector<ScoreCard>& cards);

// Per-run table plus the per-model mean/SD table.
std::string summary_markdown(const ScoreMatrix& matrix);

}  // namespace roboforge

#endif  // ROBOFORGE_HARNESS_HPP_
