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

#ifndef ROBOFORGE_SCENARIO_HPP_
#define ROBOFORGE_SCENARIO_HPP_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "roboforge/geometry.hpp"

namespace roboforge {

// Canonical definition of one reaching task: where robots may stand, which
// points must be reached and which link lengths can be bought.
struct TaskScenario {
  std::string id;
  std::string title;
  std::string description;
  std::vector<Point2> base_options;
  std::vector<Point2> targets;
  std::vector<double> link_options;
  int max_links_per_robot = 3;

  friend bool operator==(const TaskScenario&, const TaskScenario&) = default;
};

enum class DescriptionLength { Short, Normal, Long };

std::string_view to_string(DescriptionLength level);
// Accepts "short" / "normal" / "long" in any case.
std::optional<DescriptionLength> parse_description_length(std::string_view name);

// The ten reference scenarios, in table order (ids "1".."10").
const std::vector<TaskScenario>& builtin_scenarios();

// The factory box-picking task used for the ablation study (id "example").
// Distances are stored at face value in meters.
const TaskScenario& example_scenario();

// Looks up a builtin scenario or the example by id.
std::optional<TaskScenario> find_scenario(std::string_view id);

// Throws ValidationError naming the first violated invariant.
void validate_scenario(const TaskScenario& scenario);

// JSON scenario document. Throws ParseError for malformed input and
// ValidationError for a readable document that violates an invariant.
TaskScenario parse_scenario(std::string_view bytes);
std::string serialize_scenario(const TaskScenario& scenario);

// Natural-language task description at the requested level of detail.
std::string render_description(const TaskScenario& scenario, DescriptionLength level);

}  // namespace roboforge

#endif  // ROBOFORGE_SCENARIO_HPP_
