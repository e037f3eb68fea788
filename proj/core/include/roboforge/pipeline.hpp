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

#ifndef ROBOFORGE_PIPELINE_HPP_
#define ROBOFORGE_PIPELINE_HPP_

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "roboforge/arm_design.hpp"
#include "roboforge/llm_gateway.hpp"
#include "roboforge/reports.hpp"
#include "roboforge/rl_spec.hpp"
#include "roboforge/scenario.hpp"
#include "roboforge/training.hpp"

namespace roboforge {

enum class Agent { TaskAnalyst, RobotDesigner, RLDesigner };

// "task_analyst", "robot_designer", "rl_designer".
std::string_view to_string(Agent agent);
std::optional<Agent> parse_agent(std::string_view name);

enum class Stage { Analysis, Design, RLReport, CodeExtraction, Execution };
inline constexpr std::array<Stage, 5> kStages{Stage::Analysis, Stage::Design, Stage::RLReport,
                                              Stage::CodeExtraction, Stage::Execution};
std::string_view to_string(Stage stage);
// Human-readable stage name used in ABSENT notices ("Task Analysis", ...).
std::string_view display_name(Stage stage);

struct AblationConfig {
  std::set<Agent> disabled;
  DescriptionLength length = DescriptionLength::Normal;

  // "full", "C1", "C12", ... with a "/short" or "/long" suffix off Normal.
  std::string label() const;
  friend bool operator==(const AblationConfig&, const AblationConfig&) = default;
};

// Throws ValidationError when more than two agents are disabled.
void validate_ablation(const AblationConfig& config);

// Stages that disabling `agent` removes.
std::vector<Stage> stages_of(Agent agent);

struct NamedCondition {
  std::string name;  // Short, Normal, Long, C1, C2, C3, C12, C13, C23
  AblationConfig config;
};

// The nine ablation conditions: three lengths without disables, then the six
// disable sets at Normal length.
const std::vector<NamedCondition>& ablation_conditions();
std::optional<AblationConfig> find_condition(std::string_view name);

struct StageOutcome {
  enum class Kind { Completed, Skipped, Failed };
  Kind kind = Kind::Skipped;
  std::string reason;  // failure reason, or "ablated"

  static StageOutcome completed() { return {Kind::Completed, ""}; }
  static StageOutcome skipped() { return {Kind::Skipped, "ablated"}; }
  static StageOutcome failed(std::string why) { return {Kind::Failed, std::move(why)}; }
  friend bool operator==(const StageOutcome&, const StageOutcome&) = default;
};

std::string to_string(const StageOutcome& outcome);

struct StageStatus {
  std::array<StageOutcome, 5> outcomes;

  StageOutcome& operator[](Stage s) { return outcomes[static_cast<std::size_t>(s)]; }
  const StageOutcome& operator[](Stage s) const { return outcomes[static_cast<std::size_t>(s)]; }
  bool completed(Stage s) const { return (*this)[s].kind == StageOutcome::Kind::Completed; }
  int completed_count() const;
  friend bool operator==(const StageStatus&, const StageStatus&) = default;
};

struct TranscriptEntry {
  Agent agent;
  ChatRequest request;
  ChatResponse response;
};

// What the Execution stage ran: the design it executed against (and where it
// came from), one RLSpec and training result per robot.
struct ExecutionArtifacts {
  RobotDesign design;
  std::string design_source;  // "design report", "analysis", "scenario"
  std::vector<std::size_t> unreachable_targets;
  bool spec_present = false;
  bool spec_parsed = false;
  bool spec_consistent = false;
  bool launched = false;
  std::vector<RLSpec> specs;
  std::vector<TrainingResult> training;
  std::vector<std::string> notes;
};

struct PipelineArtifacts {
  std::string scenario_id;
  std::string model_id;
  AblationConfig ablation;
  std::string mode;
  std::string description;  // rendered input text
  std::optional<TaskAnalysisReport> analysis;
  std::optional<RobotDesignReport> design;
  std::optional<RLDesignReport> rl;
  std::vector<CodeArtifact> code_files;
  std::optional<ExecutionArtifacts> execution;
  std::string final_report;
  StageStatus status;
  std::vector<TranscriptEntry> transcript;
};

struct PipelineOptions {
  double margin = kDefaultDesignMargin;
  int max_links = 3;
  bool execute = true;                  // run native training in the Execution stage
  std::optional<int> episodes_override;
};

// Runs Analysis -> Design -> RLReport -> CodeExtraction -> Execution. Never
// throws for stage failures; they are recorded in the status.
PipelineArtifacts run_pipeline(const TaskScenario& scenario, const AblationConfig& ablation,
                               LlmGateway& gateway, const std::string& model_id,
                               const PipelineOptions& options = {});

PipelineArtifacts run_pipeline(const TaskScenario& scenario, const AblationConfig& ablation,
                               const GatewayMode& mode, const std::string& model_id,
                               const PipelineOptions& options = {});

// Full structured export (transcript, statuses, reports, execution results).
nlohmann::json artifacts_to_json(const PipelineArtifacts& artifacts);
// Rebuilds artifacts from an export; reports are re-parsed from their Markdown.
PipelineArtifacts artifacts_from_json(const nlohmann::json& doc);

nlohmann::json training_to_json(const TrainingResult& result);
TrainingResult training_from_json(const nlohmann::json& doc);
nlohmann::json rlspec_to_json(const RLSpec& spec);
RLSpec rlspec_from_json(const nlohmann::json& doc);

}  // namespace roboforge

#endif  // ROBOFORGE_PIPELINE_HPP_
