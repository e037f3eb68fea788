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

#ifndef ROBOFORGE_ARM_DESIGN_HPP_
#define ROBOFORGE_ARM_DESIGN_HPP_

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

#include "roboforge/kinematics.hpp"
#include "roboforge/reports.hpp"
#include "roboforge/scenario.hpp"

namespace roboforge {

// Default reach reserve used by the pipeline: d * (1 + margin) <= max reach.
inline constexpr double kDefaultDesignMargin = 0.05;

// Geometry a design is searched over.
struct DesignProblem {
  std::vector<Point2> base_options;
  std::vector<Point2> targets;
  std::vector<double> link_options;

  static DesignProblem from(const TaskScenario& scenario);
  static DesignProblem from(const TaskAnalysisReport& analysis);
};

struct RobotAssignment {
  ArmConfiguration arm;                // links sorted descending
  std::vector<std::size_t> targets;    // indices into RobotDesign::targets, ascending

  friend bool operator==(const RobotAssignment&, const RobotAssignment&) = default;
};

struct RobotDesign {
  std::vector<Point2> targets;
  std::vector<RobotAssignment> robots;  // ordered by base
  double total_cost = 0.0;              // sum of all link lengths
  double margin = 0.0;

  std::size_t link_count() const;
  friend bool operator==(const RobotDesign&, const RobotDesign&) = default;
};

// Every multiset of 1..max_links options, each sorted descending.
std::vector<std::vector<double>> candidate_link_sets(const std::vector<double>& options,
                                                     int max_links);

// Strict total order used to pick the optimum: total cost (1e-9 tolerance),
// robot count, link count, base coordinates, link lists, then assignment.
bool design_less(const RobotDesign& a, const RobotDesign& b);

// Exhaustive minimum-cost search over robot counts, base subsets, target
// partitions and link multisets. Throws InfeasibleDesignError listing, per
// unreachable target, the best attempt from each base.
RobotDesign design_robots(const DesignProblem& problem, int max_links, double margin);

struct DesignVerification {
  bool links_from_options = true;
  bool bases_from_options = true;
  bool all_reachable = true;   // annulus test for every target
  bool certified = true;       // IK certificate for every target
  std::optional<double> report_cost;
  std::optional<double> optimal_cost;
  std::optional<double> cost_ratio;
  std::optional<RobotDesign> design;  // the report's design with targets assigned
  std::vector<std::string> findings;
};

// Checks a reported design against the scenario: option membership,
// reachability of every target by its assigned robot, and cost relative to
// the optimum. Each target goes to the first listed robot that reaches it.
DesignVerification verify_design(const RobotDesignReport& report, const TaskScenario& scenario,
                                 double margin);

// Builds an executable design from a report. Targets no robot can reach are
// returned in `unreachable`; robots left without targets are dropped.
struct AssignedDesign {
  RobotDesign design;
  std::vector<std::size_t> unreachable;
};
AssignedDesign assign_targets(const RobotDesignReport& report, const std::vector<Point2>& targets,
                              double margin);

nlohmann::json design_to_json(const RobotDesign& design);
RobotDesign design_from_json(const nlohmann::json& doc);

// Human-readable summary, one line per robot.
std::string describe_design(const RobotDesign& design);

}  // namespace roboforge

#endif  // ROBOFORGE_ARM_DESIGN_HPP_
