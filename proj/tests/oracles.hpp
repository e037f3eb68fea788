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

// Independent reference implementations used by the unit and acceptance
// tests. Nothing here calls the library's kinematics or design search.

#ifndef ROBOFORGE_TESTS_ORACLES_HPP_
#define ROBOFORGE_TESTS_ORACLES_HPP_

#include <optional>
#include <vector>

#include "roboforge/arm_design.hpp"
#include "roboforge/geometry.hpp"

namespace roboforge::oracle {

// Tip-distance range found by sampling every joint (after the first, which
// only rotates the tip about the base) on a grid of `grid` angles.
struct SampledReach {
  double min_distance = 0.0;
  double max_distance = 0.0;
};
SampledReach sample_reach(const std::vector<double>& links, int grid = 720);

// Closest sampled tip to `target` over a grid on every joint.
double sampled_tip_gap(const std::vector<double>& links, const Point2& base, const Point2& target,
                       int grid = 720);

// Brute force over every target-to-base map and every ordered link tuple per
// used base; ties resolved by the library's documented total order.
std::optional<RobotDesign> brute_force_design(const std::vector<Point2>& bases,
                                              const std::vector<Point2>& targets,
                                              const std::vector<double>& link_options, int max_links,
                                              double margin);

// Sample mean and sample standard deviation (n - 1), written out long-hand.
double mean_of(const std::vector<double>& v);
double sample_sd_of(const std::vector<double>& v);

}  // namespace roboforge::oracle

#endif  // ROBOFORGE_TESTS_ORACLES_HPP_
