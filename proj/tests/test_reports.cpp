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

#include <algorithm>
#include <regex>

#include "roboforge/error.hpp"
#include "roboforge/reports.hpp"

namespace roboforge {
namespace {

const char* kAnalysis = R"(# Task Analysis Report

## 1. Number of Targets to be Reached
Three targets: (0.5, 1.2), (0.8, 1.5), (1.0, 1.0).

## 2. Number of Robots to be Built
One robot.

## 3. Base Location Options
Base Location Options: (0,0) or (0.5,0)

## 4. Arm Link Length Options
0.8 m, 1.0 m, 1.2 m

## 5. Arm Choices Information
Up to three links per arm, repetition allowed.
)";

const char* kDesign = R"(# Robot Design

## 1. Required Number of Robots
1

## 2. Selected Base Location
Robot 1 at (0.5, 0)

## 3. Design Decisions for Robotic Arms
Shortest links that reach.

## 4. Final Robotic Arm Configuration
Robot 1: links [0.8, 0.8] m

## 5. Summary
Done.
)";

const char* kRl = R"(## 1. Environment Design
Planar arm.
## 2. Motor Motion Definition
Velocities.
## 3. Reinforcement Learning Algorithm Selection
Algorithm: PPO
## 4. Success and Failure Criteria
Within 0.05 m.
## 5. Initial Conditions
Straight pose.

```python
print("env")
```
```rlspec
algorithm: PPO
```
)";

TEST(Reports, TaskAnalysisFields) {
  auto r = parse_task_analysis(kAnalysis);
  EXPECT_EQ(r.raw_markdown, kAnalysis);
  EXPECT_EQ(r.num_targets, 3);
  EXPECT_EQ(r.num_robots, 1);
  EXPECT_EQ(r.base_options, (std::vector<Point2>{{0, 0}, {0.5, 0}}));
  EXPECT_EQ(r.link_options, (std::vector<double>{0.8, 1.0, 1.2}));
  EXPECT_EQ(r.targets, (std::vector<Point2>{{0.5, 1.2}, {0.8, 1.5}, {1.0, 1.0}}));
  EXPECT_NE(r.arm_choices_notes.find("repetition"), std::string::npos);
}

TEST(Reports, DesignFields) {
  auto r = parse_robot_design(kDesign);
  EXPECT_EQ(r.required_robots, 1);
  EXPECT_EQ(r.selected_bases, (std::vector<Point2>{{0.5, 0}}));
  ASSERT_EQ(r.arm_configurations.size(), 1u);
  EXPECT_EQ(r.arm_configurations[0].robot_index, 1);
  EXPECT_EQ(r.arm_configurations[0].links, (std::vector<double>{0.8, 0.8}));
}

TEST(Reports, MissingSummaryIsSchemaError) {
  std::string md = kDesign;
  md.erase(md.find("## 5. Summary"));
  try {
    parse_robot_design(md);
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.missing(), std::vector<std::string>{"Summary"});
  }
}

TEST(Reports, AlgorithmAndCode) {
  auto r = parse_rl_design(kRl);
  EXPECT_EQ(r.algorithm.kind, Algorithm::Kind::PPO);
  ASSERT_EQ(r.code_blocks.size(), 1u);
  EXPECT_EQ(r.code_blocks[0].filename, "env.py");
  ASSERT_TRUE(r.rlspec_source.has_value());
  EXPECT_NE(r.rlspec_source->find("algorithm: PPO"), std::string::npos);
}

TEST(Reports, AlgorithmNames) {
  EXPECT_EQ(parse_algorithm("sac").kind, Algorithm::Kind::SAC);
  EXPECT_EQ(parse_algorithm("Cross-Entropy Method").kind, Algorithm::Kind::CEM);
  EXPECT_EQ(parse_algorithm("Proximal Policy Optimization (PPO)").kind, Algorithm::Kind::PPO);
  auto other = parse_algorithm("TD3");
  EXPECT_EQ(other.kind, Algorithm::Kind::Other);
  EXPECT_EQ(other.other, "TD3");
}

TEST(Reports, RenumberedHeadingsGiveSameFields) {
  const std::string base = kAnalysis;
  const std::vector<std::string> labels = {"1.", "2.", "3.", "4.", "5."};
  auto reference = parse_task_analysis(base);
  std::vector<int> perm = {0, 1, 2, 3, 4};
  int checked = 0;
  do {
    std::string md = base;
    for (int i = 0; i < 5; ++i) {
      // Temporary markers keep earlier replacements from being rewritten.
      md.replace(md.find("## " + labels[i]), 3 + labels[i].size(), "## @" + std::to_string(perm[i]) + "@");
    }
    for (int i = 0; i < 5; ++i) {
      const std::string marker = "@" + std::to_string(i) + "@";
      md.replace(md.find(marker), marker.size(), labels[i]);
    }
    auto r = parse_task_analysis(md);
    EXPECT_EQ(r.base_options, reference.base_options);
    EXPECT_EQ(r.targets, reference.targets);
    EXPECT_EQ(r.link_options, reference.link_options);
    EXPECT_EQ(r.num_targets, reference.num_targets);
    EXPECT_EQ(r.num_robots, reference.num_robots);
    ++checked;
  } while (std::next_permutation(perm.begin(), perm.end()));
  EXPECT_EQ(checked, 120);
}

TEST(Reports, FuzzyHeadings) {
  std::string md = kAnalysis;
  md = std::regex_replace(md, std::regex("## 3\\. Base Location Options"), "### III) **base location options:**");
  md = std::regex_replace(md, std::regex("## 4\\. Arm Link Length Options"), "4 - ARM LINK-LENGTH OPTIONS");
  auto r = parse_task_analysis(md);
  EXPECT_EQ(r.base_options, (std::vector<Point2>{{0, 0}, {0.5, 0}}));
  EXPECT_EQ(r.link_options, (std::vector<double>{0.8, 1.0, 1.2}));
  EXPECT_GE(heading_similarity("Final Robot Arm Configuration", "Final Robotic Arm Configuration"), 0.5);
  EXPECT_LT(heading_similarity("Training Script", "Summary"), 0.8);
}

TEST(Reports, HeadingsInsideFencesIgnored) {
  std::string md = kDesign;
  md.insert(md.find("## 5. Summary"), "```\n## 5. Summary\n```\n");
  EXPECT_NO_THROW(parse_robot_design(md));
  std::string no_summary = kDesign;
  no_summary.erase(no_summary.find("## 5. Summary"));
  no_summary += "```\n## 5. Summary\n```\n";
  EXPECT_THROW(parse_robot_design(no_summary), SchemaError);
}

TEST(Reports, UnreadableCoordinateIsExtractionError) {
  std::string md = kAnalysis;
  md.replace(md.find("Base Location Options: (0,0) or (0.5,0)"), 39, "somewhere near the wall");
  try {
    parse_task_analysis(md);
    FAIL() << "expected ExtractionError";
  } catch (const ExtractionError& e) {
    EXPECT_NE(std::string(e.what()).find("line"), std::string::npos);
  }
}

TEST(Reports, DispatchByKind) {
  EXPECT_TRUE(std::holds_alternative<TaskAnalysisReport>(parse_report(kAnalysis, ReportKind::TaskAnalysis)));
  EXPECT_TRUE(std::holds_alternative<RLDesignReport>(parse_report(kRl, ReportKind::RLDesign)));
  EXPECT_THROW(parse_report(kAnalysis, ReportKind::RobotDesign), SchemaError);
  EXPECT_EQ(locate_sections(kRl, ReportKind::RLDesign).size(), 5u);
}

}  // namespace
}  // namespace roboforge
