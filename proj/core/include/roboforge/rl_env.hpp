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

#ifndef ROBOFORGE_RL_ENV_HPP_
#define ROBOFORGE_RL_ENV_HPP_

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "roboforge/rl_spec.hpp"

namespace roboforge {

struct EnvState {
  std::vector<double> joint_angles;  // relative, radians
  std::size_t active_target_index = 0;
  int step_count = 0;

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

struct Observation {
  std::vector<double> sin_cos;  // sin, cos of each cumulative joint angle, interleaved
  double dx = 0.0;              // target - tip
  double dy = 0.0;
  double distance = 0.0;

  // Flat layout [sin_1, cos_1, ..., dx, dy, distance].
  std::vector<double> to_vector() const;
  static std::size_t dimension(std::size_t joints) { return 2 * joints + 3; }
};

enum class Termination { Running, Success, Timeout };

struct StepResult {
  EnvState state;
  Observation observation;
  double reward = 0.0;
  Termination done = Termination::Running;
};

// Default reset noise: uniform in [-0.05, 0.05] rad per joint.
inline constexpr double kResetNoise = 0.05;

Observation observe(const RLSpec& spec, const EnvState& state);

// Zero pose plus seeded uniform noise in [-noise, noise].
std::pair<EnvState, Observation> env_reset(const RLSpec& spec, std::size_t target_index,
                                           std::uint64_t seed, double noise = kResetNoise);

// Integrates clamped joint velocities for one dt. Throws
// std::invalid_argument on a dimension mismatch.
StepResult env_step(const EnvState& state, std::span<const double> action, const RLSpec& spec);

// Upper bound on |reward| for a single step of this spec.
double reward_bound(const RLSpec& spec, std::size_t target_index);

}  // namespace roboforge

#endif  // ROBOFORGE_RL_ENV_HPP_
