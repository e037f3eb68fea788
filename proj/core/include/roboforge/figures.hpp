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

#ifndef ROBOFORGE_FIGURES_HPP_
#define ROBOFORGE_FIGURES_HPP_

#include <filesystem>
#include <string>
#include <vector>

#include "roboforge/rl_spec.hpp"
#include "roboforge/training.hpp"

namespace roboforge {

// Episode vs total reward with a trailing 10-episode moving average.
std::string learning_curve_svg(const std::vector<EpisodeRecord>& curve);

// Joint angle vs time, one polyline per joint and target trajectory.
std::string motor_control_svg(const std::vector<Trajectory>& trajectories);

// Workspace view: base marker, reach annulus, one marker per target and the
// tip path of each trajectory.
std::string tip_trajectory_svg(const RLSpec& spec, const std::vector<Trajectory>& trajectories);

// Writes learning_curve, motor_control and tip_trajectory as .svg plus a .csv
// twin holding exactly the data exported by the engine (learning_curve_csv,
// trajectories_csv). File names are prefixed with `prefix`.
std::vector<std::filesystem::path> emit_figures(const TrainingResult& result,
                                                const std::vector<Trajectory>& trajectories,
                                                const RLSpec& spec, const std::filesystem::path& out_dir,
                                                const std::string& prefix = "");

// Deterministic evaluation of the trained policy on every target of the spec.
std::vector<Trajectory> evaluate_all(const TrainingResult& result, const RLSpec& spec);

}  // namespace roboforge

#endif  // ROBOFORGE_FIGURES_HPP_
