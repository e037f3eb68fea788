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

#include <nlohmann/json.hpp>

#include "roboforge/error.hpp"
#include "roboforge/pipeline.hpp"
#include "roboforge/prompts.hpp"
#include "roboforge/stub_provider.hpp"
#include "roboforge/text.hpp"

namespace roboforge {
namespace {

using Kind = StageOutcome::Kind;

PipelineOptions quick() {
  PipelineOptions o;
  o.episodes_override = 20;
  return o;
}

AblationConfig disable(std::initializer_list<Agent> agents) {
  AblationConfig c;
  c.disabled = agents;
  return c;
}

const TaskScenario& row1() { return builtin_scenarios()[0]; }

std::size_t count_of(const std::string& haystack, std::string_view needle) {
  std::size_t n = 0;
  for (auto p = haystack.find(needle); p != std::string::npos; p = haystack.find(needle, p + 1)) ++n;
  return n;
}

class Replay : public ::testing::Test {
 protected:
  LlmGateway gateway{ReplayMode{ROBOFORGE_FIXTURE_DIR}};
};

TEST_F(Replay, FullRunCompletesEveryStage) {
  for (auto model : {kStubCareful, kStubHasty}) {
    auto a = run_pipeline(row1(), {}, gateway, std::string(model), quick());
    for (Stage s : kStages) EXPECT_EQ(a.status[s].kind, Kind::Completed) << to_string(s) << " " << model;
    EXPECT_TRUE(a.analysis && a.design && a.rl);
    EXPECT_GE(a.code_files.size(), 3u);
    EXPECT_EQ(a.transcript.size(), 3u);
    EXPECT_EQ(a.mode, "replay");
    EXPECT_EQ(a.final_report.find("```"), std::string::npos);
  }
}

TEST_F(Replay, DisabledRlDesignerSkipsRlStages) {
  auto a = run_pipeline(row1(), disable({Agent::RLDesigner}), gateway, "stub-careful", quick());
  EXPECT_EQ(a.status[Stage::Analysis].kind, Kind::Completed);
  EXPECT_EQ(a.status[Stage::Design].kind, Kind::Completed);
  for (Stage s : {Stage::RLReport, Stage::CodeExtraction, Stage::Execution}) {
    EXPECT_EQ(a.status[s].kind, Kind::Skipped);
    EXPECT_EQ(a.status[s].reason, "ablated");
  }
  EXPECT_TRUE(a.code_files.empty());
  EXPECT_FALSE(a.rl.has_value());
  EXPECT_EQ(a.status.completed_count(), 2);
}

TEST_F(Replay, DoubleDisableInjectsTwoNotices) {
  auto a = run_pipeline(row1(), disable({Agent::TaskAnalyst, Agent::RobotDesigner}), gateway, "stub-careful", quick());
  ASSERT_EQ(a.transcript.size(), 1u);
  EXPECT_EQ(a.transcript[0].agent, Agent::RLDesigner);
  const std::string& user = a.transcript[0].request.messages.at(1).content;
  EXPECT_EQ(count_of(user, kAbsentNotice), 2u);
  EXPECT_NE(user.find(a.description), std::string::npos);
  EXPECT_NE(user.find(std::string(kAbsentNotice) + "Task Analysis"), std::string::npos);
  EXPECT_NE(user.find(std::string(kAbsentNotice) + "Robot Design"), std::string::npos);
  EXPECT_EQ(a.status.completed_count(), 3);
}

TEST_F(Replay, EachAgentSeesOnlyItsUpstream) {
  auto a = run_pipeline(row1(), {}, gateway, "stub-careful", quick());
  ASSERT_EQ(a.transcript.size(), 3u);
  EXPECT_EQ(a.transcript[0].request.messages[1].content, a.description);
  EXPECT_EQ(a.transcript[1].request.messages[1].content, a.transcript[0].response.content);
  EXPECT_EQ(a.transcript[2].request.messages[1].content, a.transcript[1].response.content);
  EXPECT_EQ(a.transcript[0].request.messages[0].content, task_analyst_system_prompt());
  EXPECT_EQ(a.transcript[1].request.messages[0].content, robot_designer_system_prompt());
  EXPECT_EQ(a.transcript[2].request.messages[0].content, rl_designer_system_prompt());
  EXPECT_EQ(a.analysis->raw_markdown, a.transcript[0].response.content);
}

std::vector<AblationConfig> all_disable_sets() {
  std::vector<AblationConfig> out = {{}};
  const Agent agents[] = {Agent::TaskAnalyst, Agent::RobotDesigner, Agent::RLDesigner};
  for (int i = 0; i < 3; ++i) {
    out.push_back(disable({agents[i]}));
    for (int j = i + 1; j < 3; ++j) out.push_back(disable({agents[i], agents[j]}));
  }
  return out;
}

TEST_F(Replay, AblationMonotonicity) {
  std::vector<std::pair<AblationConfig, StageStatus>> runs;
  for (const auto& c : all_disable_sets()) runs.emplace_back(c, run_pipeline(row1(), c, gateway, "stub-careful", quick()).status);
  for (const auto& [small, s1] : runs) {
    for (const auto& [big, s2] : runs) {
      if (!std::includes(big.disabled.begin(), big.disabled.end(), small.disabled.begin(), small.disabled.end())) continue;
      for (Stage s : kStages) {
        if (s2.completed(s)) EXPECT_TRUE(s1.completed(s)) << small.label() << " vs " << big.label();
      }
      EXPECT_LE(s2.completed_count(), s1.completed_count());
    }
  }
}

TEST_F(Replay, PresenceMatchesStatus) {
  for (const auto& c : all_disable_sets()) {
    auto a = run_pipeline(row1(), c, gateway, "stub-hasty", quick());
    EXPECT_EQ(a.analysis.has_value(), a.status.completed(Stage::Analysis)) << c.label();
    EXPECT_EQ(a.design.has_value(), a.status.completed(Stage::Design)) << c.label();
    EXPECT_EQ(a.rl.has_value(), a.status.completed(Stage::RLReport)) << c.label();
  }
}

TEST_F(Replay, DeterministicAcrossRuns) {
  auto strip = [](nlohmann::json j) {
    if (j.contains("execution") && j["execution"].is_object())
      for (auto& t : j["execution"]["training"]) t.erase("wall_time");
    for (auto& e : j["transcript"]) e["response"].erase("latency_ms");
    return j;
  };
  auto a = run_pipeline(row1(), {}, gateway, "stub-careful", quick());
  auto b = run_pipeline(row1(), {}, gateway, "stub-careful", quick());
  EXPECT_EQ(strip(artifacts_to_json(a)), strip(artifacts_to_json(b)));
}

TEST_F(Replay, JsonRoundTrip) {
  auto a = run_pipeline(row1(), {}, gateway, "stub-hasty", quick());
  auto back = artifacts_from_json(artifacts_to_json(a));
  EXPECT_EQ(back.status, a.status);
  EXPECT_EQ(back.final_report, a.final_report);
  EXPECT_EQ(back.code_files, a.code_files);
  ASSERT_TRUE(back.execution.has_value());
  EXPECT_EQ(back.execution->specs, a.execution->specs);
  EXPECT_EQ(back.execution->training[0].learning_curve, a.execution->training[0].learning_curve);
  EXPECT_EQ(back.execution->training[0].policy.parameters, a.execution->training[0].policy.parameters);
  EXPECT_EQ(artifacts_to_json(back), artifacts_to_json(a));
}

TEST_F(Replay, SacIsExecutedAsPpoWithNote) {
  auto a = run_pipeline(row1(), {}, gateway, "stub-hasty", quick());
  ASSERT_TRUE(a.rl.has_value());
  EXPECT_EQ(a.rl->algorithm.kind, Algorithm::Kind::SAC);
  ASSERT_TRUE(a.execution.has_value());
  ASSERT_FALSE(a.execution->training.empty());
  EXPECT_EQ(a.execution->training[0].executed, Algorithm::Kind::PPO);
  ASSERT_FALSE(a.execution->training[0].deviations.empty());
  EXPECT_TRUE(text::icontains(a.execution->training[0].deviations[0], "SAC"));
}

TEST_F(Replay, MissingFixtureFailsWithoutThrowing) {
  auto a = run_pipeline(row1(), {}, gateway, "model-without-fixtures", quick());
  EXPECT_EQ(a.status[Stage::Analysis].kind, Kind::Failed);
  for (Stage s : {Stage::Design, Stage::RLReport, Stage::CodeExtraction, Stage::Execution})
    EXPECT_EQ(a.status[s].kind, Kind::Failed);
  EXPECT_EQ(a.status.completed_count(), 0);
  auto c3 = run_pipeline(row1(), disable({Agent::RLDesigner}), gateway, "model-without-fixtures", quick());
  EXPECT_EQ(c3.status[Stage::Design].kind, Kind::Failed);
  EXPECT_EQ(c3.status[Stage::RLReport].kind, Kind::Skipped);
}

TEST(Pipeline, FailedStageOnlyFollowedByFailedOrSkipped) {
  LlmGateway gateway{ReplayMode{ROBOFORGE_FIXTURE_DIR}};
  for (const auto& c : all_disable_sets()) {
    auto a = run_pipeline(row1(), c, gateway, "nobody", quick());
    bool failed = false;
    for (Stage s : kStages) {
      if (failed) EXPECT_NE(a.status[s].kind, Kind::Completed);
      failed = failed || a.status[s].kind == Kind::Failed;
    }
  }
}

TEST(Pipeline, BadReplayDirectoryIsRecordedAsFailure) {
  auto a = run_pipeline(row1(), {}, GatewayMode{ReplayMode{"/nonexistent/fixtures"}}, "stub-careful", quick());
  EXPECT_EQ(a.status[Stage::Analysis].kind, Kind::Failed);
}

TEST(Pipeline, LiveAgainstStubMatchesReplay) {
  StubChatServer server;
  auto live = run_pipeline(row1(), {}, GatewayMode{LiveMode{server.endpoint(), ""}}, "stub-careful", quick());
  auto replay = run_pipeline(row1(), {}, GatewayMode{ReplayMode{ROBOFORGE_FIXTURE_DIR}}, "stub-careful", quick());
  EXPECT_EQ(server.request_count(), 3);
  EXPECT_EQ(live.final_report, replay.final_report);
  EXPECT_EQ(live.status, replay.status);
}

TEST(Ablation, ConditionsAndLabels) {
  const auto& c = ablation_conditions();
  ASSERT_EQ(c.size(), 9u);
  std::vector<std::string> names;
  for (const auto& n : c) names.push_back(n.name);
  EXPECT_EQ(names, (std::vector<std::string>{"Short", "Normal", "Long", "C1", "C2", "C3", "C12", "C13", "C23"}));
  for (int i = 0; i < 3; ++i) EXPECT_TRUE(c[i].config.disabled.empty());
  for (int i = 3; i < 9; ++i) EXPECT_EQ(c[i].config.length, DescriptionLength::Normal);
  EXPECT_EQ(find_condition("C13")->disabled, (std::set<Agent>{Agent::TaskAnalyst, Agent::RLDesigner}));
  EXPECT_EQ(AblationConfig{}.label(), "full");
  EXPECT_EQ(disable({Agent::RobotDesigner, Agent::TaskAnalyst}).label(), "C12");
  EXPECT_THROW(validate_ablation(disable({Agent::TaskAnalyst, Agent::RobotDesigner, Agent::RLDesigner})), ValidationError);
  EXPECT_EQ(parse_agent("rl_designer"), Agent::RLDesigner);
  EXPECT_EQ(parse_agent("2"), Agent::RobotDesigner);
  EXPECT_FALSE(parse_agent("reviewer").has_value());
}

TEST(Ablation, ForcedStagePatterns) {
  LlmGateway gateway{ReplayMode{ROBOFORGE_FIXTURE_DIR}};
  const std::map<std::string, std::array<Kind, 5>> expected = {
      {"C1", {Kind::Skipped, Kind::Completed, Kind::Completed, Kind::Completed, Kind::Completed}},
      {"C2", {Kind::Completed, Kind::Skipped, Kind::Completed, Kind::Completed, Kind::Completed}},
      {"C3", {Kind::Completed, Kind::Completed, Kind::Skipped, Kind::Skipped, Kind::Skipped}},
      {"C12", {Kind::Skipped, Kind::Skipped, Kind::Completed, Kind::Completed, Kind::Completed}},
      {"C13", {Kind::Skipped, Kind::Completed, Kind::Skipped, Kind::Skipped, Kind::Skipped}},
      {"C23", {Kind::Completed, Kind::Skipped, Kind::Skipped, Kind::Skipped, Kind::Skipped}},
  };
  for (const auto& [name, kinds] : expected) {
    auto a = run_pipeline(example_scenario(), *find_condition(name), gateway, "stub-careful", quick());
    for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(a.status.outcomes[i].kind, kinds[i]) << name << " stage " << i;
  }
}

}  // namespace
}  // namespace roboforge
