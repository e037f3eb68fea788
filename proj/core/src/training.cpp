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

#include "roboforge/training.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "roboforge/kinematics.hpp"

namespace roboforge {

bool TrainingResult::all_succeeded() const {
  return !failed && !success.empty() && std::all_of(success.begin(), success.end(), [](bool s) { return s; });
}

TrainingResult train(const RLSpec& spec) {
  validate_rlspec(spec);
  switch (spec.algorithm.kind) {
    case Algorithm::Kind::CEM:
      return train_cem(spec);
    case Algorithm::Kind::PPO:
      return train_ppo(spec);
    case Algorithm::Kind::SAC: {
      TrainingResult r = train_ppo(spec);
      r.deviations.insert(r.deviations.begin(), "algorithm SAC executed as PPO (no native SAC trainer)");
      return r;
    }
    case Algorithm::Kind::Other: {
      TrainingResult r = train_ppo(spec);
      r.deviations.insert(r.deviations.begin(),
                          fmt::format("algorithm '{}' executed as PPO (no native trainer)", spec.algorithm.other));
      return r;
    }
  }
  throw std::logic_error("train: unknown algorithm");
}

Trajectory evaluate(const PolicySnapshot& snapshot, const RLSpec& spec, std::size_t target_index) {
  const PolicyArchitecture& arch = snapshot.architecture;
  if (arch.act_dim != spec.links.size() || arch.obs_dim != Observation::dimension(spec.links.size())) {
    throw std::invalid_argument("evaluate: policy architecture does not match the arm geometry");
  }
  GaussianPolicy policy(arch);
  if (snapshot.parameters.size() != policy.parameter_count()) {
    throw std::invalid_argument("evaluate: parameter count does not match the architecture");
  }
  auto [state, obs] = env_reset(spec, target_index, 0, 0.0);
  Trajectory traj;
  traj.target_index = target_index;
  traj.steps.push_back({0.0, state.joint_angles, tip_position(spec.links, state.joint_angles, spec.base), 0.0});
  for (;;) {
    std::vector<double> action = policy.act(snapshot.parameters, obs);
    StepResult r = env_step(state, action, spec);
    state = std::move(r.state);
    obs = std::move(r.observation);
    traj.steps.push_back({state.step_count * spec.dt, state.joint_angles,
                          tip_position(spec.links, state.joint_angles, spec.base), r.reward});
    if (r.done != Termination::Running) {
      traj.terminal = r.done;
      break;
    }
  }
  return traj;
}

std::string learning_curve_csv(const std::vector<EpisodeRecord>& curve) {
  std::string out = "episode,total_reward,final_distance\n";
  for (const auto& e : curve) out += fmt::format("{},{},{}\n", e.episode, e.total_reward, e.final_distance);
  return out;
}

namespace {

std::string trajectory_header(std::size_t joints) {
  std::string h = "t";
  for (std::size_t k = 1; k <= joints; ++k) h += fmt::format(",theta_{}", k);
  return h + ",tip_x,tip_y,reward";
}

std::string trajectory_row(const TrajectoryStep& s) {
  std::string row = fmt::format("{}", s.t);
  for (double a : s.joint_angles) row += fmt::format(",{}", a);
  return row + fmt::format(",{},{},{}", s.tip.x, s.tip.y, s.reward);
}

}  // namespace

std::string trajectory_csv(const Trajectory& trajectory) {
  std::size_t joints = trajectory.steps.empty() ? 0 : trajectory.steps.front().joint_angles.size();
  std::string out = trajectory_header(joints) + "\n";
  for (const auto& s : trajectory.steps) out += trajectory_row(s) + "\n";
  return out;
}

std::string trajectories_csv(const std::vector<Trajectory>& trajectories) {
  std::size_t joints = 0;
  for (const auto& t : trajectories) {
    if (!t.steps.empty()) joints = t.steps.front().joint_angles.size();
  }
  std::string out = "target," + trajectory_header(joints) + "\n";
  for (const auto& t : trajectories) {
    for (const auto& s : t.steps) out += fmt::format("{},", t.target_index) + trajectory_row(s) + "\n";
  }
  return out;
}

double mean_final_distance(const std::vector<EpisodeRecord>& curve, double begin_fraction,
                           double end_fraction) {
  const auto n = static_cast<double>(curve.size());
  auto begin = static_cast<std::size_t>(std::floor(begin_fraction * n));
  auto end = static_cast<std::size_t>(std::ceil(end_fraction * n));
  end = std::min(end, curve.size());
  if (begin >= end) throw std::invalid_argument("mean_final_distance: empty window");
  double sum = 0.0;
  for (std::size_t i = begin; i < end; ++i) sum += curve[i].final_distance;
  return sum / static_cast<double>(end - begin);
}

}  // namespace roboforge
