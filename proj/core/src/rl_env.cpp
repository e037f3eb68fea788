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

#include "roboforge/rl_env.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "roboforge/kinematics.hpp"

namespace roboforge {

std::vector<double> Observation::to_vector() const {
  std::vector<double> v = sin_cos;
  v.push_back(dx);
  v.push_back(dy);
  v.push_back(distance);
  return v;
}

Observation observe(const RLSpec& spec, const EnvState& state) {
  Observation obs;
  double heading = 0.0;
  obs.sin_cos.reserve(2 * state.joint_angles.size());
  for (double a : state.joint_angles) {
    heading += a;
    obs.sin_cos.push_back(std::sin(heading));
    obs.sin_cos.push_back(std::cos(heading));
  }
  Point2 tip = tip_position(spec.links, state.joint_angles, spec.base);
  const Point2& target = spec.targets.at(state.active_target_index);
  obs.dx = target.x - tip.x;
  obs.dy = target.y - tip.y;
  obs.distance = std::sqrt(obs.dx * obs.dx + obs.dy * obs.dy);
  return obs;
}

std::pair<EnvState, Observation> env_reset(const RLSpec& spec, std::size_t target_index,
                                           std::uint64_t seed, double noise) {
  if (target_index >= spec.targets.size())
    throw std::invalid_argument("env_reset: target index out of range");
  EnvState state;
  state.joint_angles.assign(spec.links.size(), 0.0);
  state.active_target_index = target_index;
  if (noise > 0.0) {
    std::mt19937_64 rng(seed);
    // Drawn from the raw engine so the sequence does not depend on the
    // standard library's distribution implementation.
    for (double& a : state.joint_angles) {
      double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      a = (2.0 * u - 1.0) * noise;
    }
  }
  Observation obs = observe(spec, state);
  return {std::move(state), std::move(obs)};
}

StepResult env_step(const EnvState& state, std::span<const double> action, const RLSpec& spec) {
  if (action.size() != spec.links.size() || state.joint_angles.size() != spec.links.size())
    throw std::invalid_argument("env_step: action dimension must equal the number of links");
  StepResult r;
  r.state = state;
  double action_sq = 0.0;
  for (std::size_t k = 0; k < action.size(); ++k) {
    double a = std::clamp(action[k], -spec.action_limit, spec.action_limit);
    if (std::isnan(a)) a = 0.0;
    r.state.joint_angles[k] += a * spec.dt;
    action_sq += a * a;
  }
  r.state.step_count = state.step_count + 1;
  r.observation = observe(spec, r.state);
  double d = r.observation.distance;
  bool success = d < spec.success_epsilon;
  r.reward = -spec.reward.distance_w * d - spec.reward.action_penalty_w * action_sq +
             (success ? spec.reward.success_bonus : 0.0);
  if (success) {
    r.done = Termination::Success;
  } else if (r.state.step_count >= spec.max_steps_per_episode) {
    r.done = Termination::Timeout;
  }
  return r;
}

double reward_bound(const RLSpec& spec, std::size_t target_index) {
  double reach = std::accumulate(spec.links.begin(), spec.links.end(), 0.0);
  double d = distance(spec.base, spec.targets.at(target_index));
  return std::abs(spec.reward.distance_w) * (reach + d) +
         std::abs(spec.reward.action_penalty_w) * static_cast<double>(spec.links.size()) *
             spec.action_limit * spec.action_limit +
         std::abs(spec.reward.success_bonus);
}

}  // namespace roboforge
