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

#include "roboforge/prompts.hpp"
#include "roboforge/reports.hpp"
#include "roboforge/scenario.hpp"
#include "roboforge/text.hpp"

namespace roboforge {
namespace {

const std::string& system_of(const ChatRequest& r) { return r.messages.at(0).content; }

void expect_headings(const std::string& system, ReportKind kind) {
  for (auto h : section_headings(kind)) EXPECT_NE(system.find(h), std::string::npos) << h;
}

TEST(Prompts, TaskAnalyst) {
  const std::string d = render_description(builtin_scenarios()[0], DescriptionLength::Normal);
  auto r = task_analyst_prompt(d, "m");
  ASSERT_EQ(r.messages.size(), 2u);
  EXPECT_EQ(r.messages[0].role, "system");
  EXPECT_EQ(r.messages[1].role, "user");
  EXPECT_EQ(r.messages[1].content, d);
  expect_headings(system_of(r), ReportKind::TaskAnalysis);
  EXPECT_TRUE(text::icontains(system_of(r), "coordinate frame"));
  EXPECT_TRUE(text::icontains(system_of(r), "convert all positional data"));
  EXPECT_TRUE(text::icontains(system_of(r), "link length options exactly as given"));
  EXPECT_EQ(r.model_id, "m");
}

TEST(Prompts, RobotDesigner) {
  auto r = robot_designer_prompt("# analysis\nbody", "m");
  EXPECT_EQ(r.messages[1].content, "# analysis\nbody");
  expect_headings(system_of(r), ReportKind::RobotDesign);
  EXPECT_TRUE(text::icontains(system_of(r), "Final Robotic Arm Configuration"));
  EXPECT_TRUE(text::icontains(system_of(r), "reach all of its assigned target"));
  EXPECT_TRUE(text::icontains(system_of(r), "economical"));
  EXPECT_TRUE(text::icontains(system_of(r), "redundancy"));
  EXPECT_TRUE(text::icontains(system_of(r), "neither excessively long nor insufficiently short"));
}

TEST(Prompts, RlDesigner) {
  auto r = rl_designer_prompt("# design", "m");
  expect_headings(system_of(r), ReportKind::RLDesign);
  for (auto f : {"env.py", "train.py", "eval.py"}) EXPECT_NE(system_of(r).find(f), std::string::npos) << f;
  EXPECT_NE(system_of(r).find("Success and Failure Criteria"), std::string::npos);
  EXPECT_NE(system_of(r).find("rlspec"), std::string::npos);
  for (auto key : {"algorithm", "episodes", "max_steps", "dt", "success_epsilon", "action_limit", "reward_weights", "seed"})
    EXPECT_NE(system_of(r).find(key), std::string::npos) << key;
  EXPECT_TRUE(text::icontains(system_of(r), "justify"));
}

TEST(Prompts, EmptyInputRejected) {
  EXPECT_THROW(task_analyst_prompt("", "m"), std::invalid_argument);
  EXPECT_THROW(robot_designer_prompt("", "m"), std::invalid_argument);
  EXPECT_THROW(rl_designer_prompt("", "m"), std::invalid_argument);
}

}  // namespace
}  // namespace roboforge
