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

#ifndef ROBOFORGE_REPORTS_HPP_
#define ROBOFORGE_REPORTS_HPP_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "roboforge/geometry.hpp"

namespace roboforge {

enum class ReportKind { TaskAnalysis, RobotDesign, RLDesign };

std::string_view to_string(ReportKind kind);

// Canonical numbered section headings of each report, in order.
std::span<const std::string_view> section_headings(ReportKind kind);

struct CodeArtifact {
  std::string filename;
  std::string language_tag;
  std::string source;

  friend bool operator==(const CodeArtifact&, const CodeArtifact&) = default;
};

struct Algorithm {
  enum class Kind { PPO, SAC, CEM, Other };
  Kind kind = Kind::PPO;
  std::string other;  // free text when kind == Other

  friend bool operator==(const Algorithm&, const Algorithm&) = default;
};

std::string to_string(const Algorithm& algorithm);
// "PPO", "sac", "Cross-Entropy Method", ...; anything unrecognized is Other.
Algorithm parse_algorithm(std::string_view name);

struct TaskAnalysisReport {
  std::string raw_markdown;
  int num_targets = 0;
  int num_robots = 0;
  std::vector<Point2> targets;
  std::vector<Point2> base_options;
  std::vector<double> link_options;
  std::string arm_choices_notes;
};

struct ArmConfigurationEntry {
  int robot_index = 1;  // 1-based, as written in the report
  std::vector<double> links;

  friend bool operator==(const ArmConfigurationEntry&, const ArmConfigurationEntry&) = default;
};

struct RobotDesignReport {
  std::string raw_markdown;
  int required_robots = 0;
  std::vector<Point2> selected_bases;  // one per robot, in robot order
  std::string design_rationale;
  std::vector<ArmConfigurationEntry> arm_configurations;
  std::string summary;
};

struct RLDesignReport {
  std::string raw_markdown;
  std::string env_design;
  std::string motor_motion;
  Algorithm algorithm;
  std::string success_failure_criteria;
  std::string initial_conditions;
  std::vector<CodeArtifact> code_blocks;
  // Body of the fenced block tagged "rlspec", when present. Parsed against the
  // robot design by parse_rlspec().
  std::optional<std::string> rlspec_source;
};

using AnyReport = std::variant<TaskAnalysisReport, RobotDesignReport, RLDesignReport>;

// Section body located by fuzzy heading match.
struct ReportSection {
  std::string heading;  // canonical name
  std::string body;     // inline text after the heading plus following lines
  int line = 0;         // 1-based line of the heading
};

// Finds the schema's sections. Headings are matched case-insensitively,
// ignoring numbering and markup; text inside code fences is never a heading.
// Absent sections are simply missing from the result.
std::vector<ReportSection> locate_sections(std::string_view markdown, ReportKind kind);

// Throws SchemaError (missing sections) or ExtractionError (a required value
// cannot be read).
AnyReport parse_report(std::string_view markdown, ReportKind kind);

TaskAnalysisReport parse_task_analysis(std::string_view markdown);
RobotDesignReport parse_robot_design(std::string_view markdown);
RLDesignReport parse_rl_design(std::string_view markdown);

// Token-overlap score in [0, 1] between a candidate heading line and a
// canonical heading.
double heading_similarity(std::string_view candidate, std::string_view canonical);

}  // namespace roboforge

#endif  // ROBOFORGE_REPORTS_HPP_
