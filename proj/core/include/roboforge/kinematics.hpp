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

#ifndef ROBOFORGE_KINEMATICS_HPP_
#define ROBOFORGE_KINEMATICS_HPP_

#include <span>
#include <vector>

#include "roboforge/geometry.hpp"

namespace roboforge {

// Planar serial arm with free revolute joints. Links are in meters, ordered
// from the base outwards.
struct ArmConfiguration {
  std::vector<double> links;
  Point2 base;

  double total_length() const;
  friend bool operator==(const ArmConfiguration&, const ArmConfiguration&) = default;
};

struct ReachInterval {
  double min_reach = 0.0;
  double max_reach = 0.0;
};

struct IKSolution {
  bool success = false;
  // Relative joint angles: joint 1 from +x, joint k from link k-1.
  std::vector<double> joint_angles;
  double tip_error = 0.0;
  int sweeps = 0;
};

// Joint positions p_0 = base .. p_n = tip under the relative-angle
// convention. Throws std::invalid_argument if the sizes differ or are zero.
std::vector<Point2> forward_kinematics(std::span<const double> links,
                                       std::span<const double> angles, const Point2& base);

Point2 tip_position(std::span<const double> links, std::span<const double> angles,
                    const Point2& base);

// Closed annulus of tip distances: [max(0, 2*max L - sum L), sum L].
ReachInterval reach_interval(std::span<const double> links);

// min_reach <= d and d * (1 + margin) <= max_reach, d = |target - base|.
bool is_reachable(const ArmConfiguration& config, const Point2& target, double margin);

// Cyclic coordinate descent from the zero pose. Non-convergence is reported
// through success == false with the best tip error found.
IKSolution solve_ik(const ArmConfiguration& config, const Point2& target, double tol = 1e-6,
                    int max_iters = 1000);

}  // namespace roboforge

#endif  // ROBOFORGE_KINEMATICS_HPP_
