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

#ifndef ROBOFORGE_TRAINING_HPP_
#define ROBOFORGE_TRAINING_HPP_

#include <string>
#include <vector>

#include "roboforge/policy.hpp"
#include "roboforge/rl_env.hpp"
#include "roboforge/rl_spec.hpp"

namespace roboforge {

struct EpisodeRecord {
  int episode = 0;
  double total_reward = 0.0;
  double final_distance = 0.0;

  friend bool operator==(const EpisodeRecord&, const EpisodeRecord&) = default;
};

struct TrainingResult {
  std::vector<EpisodeRecord> learning_curve;
  PolicySnapshot policy;
  std::vector<bool> success;  // one per target
  double wall_time = 0.0;     // seconds
  std::vector<std::string> deviations;
  Algorithm::Kind executed = Algorithm::Kind::PPO;
  bool failed = false;
  std::string diagnostic;

  bool all_succeeded() const;
};

struct PpoOptions {
  std::vector<int> hidden{32, 32};
  double gamma = 0.99;
  double lambda = 0.95;
  double clip = 0.2;
  double policy_lr = 1e-3;
  double value_lr = 1e-3;
  int epochs = 10;
  int minibatch = 64;
  int episodes_per_batch = 4;
  double reward_scale = 0.1;  // applied to rewards for the value/advantage pass only
  double init_log_std = -0.5;
  double feature_scale = 1.0;  // multiplies the default architecture distance_scale
  double entropy_coef = 0.0;
  double max_grad_norm = 0.5;  // global-norm clip per minibatch; <= 0 disables
  bool anneal_lr = true;       // linear decay to zero over the episode budget
  // After every update the mean policy is rolled out on all targets; the
  // returned policy is the best checkpoint (most targets reached, then the
  // smallest summed final distance).
  bool keep_best = true;
};

struct CemOptions {
  std::vector<int> hidden{16};
  int population = 50;
  double elite_fraction = 0.2;
  double init_std = 0.5;
  double extra_std = 0.02;  // added to the refit std each generation
};

// Dispatches on spec.algorithm: CEM runs the cross-entropy trainer; PPO, SAC
// and anything else run PPO, with a deviation note for the substitutions.
TrainingResult train(const RLSpec& spec);

// PPO: one curve entry per episode, targets cycled episode by episode.
TrainingResult train_ppo(const RLSpec& spec, const PpoOptions& options = {});

// CEM: one curve entry per generation (the mean policy's deterministic return
// and final distance, averaged over targets); spec.episodes caps generations
// and the search stops once the mean policy reaches every target.
TrainingResult train_cem(const RLSpec& spec, const CemOptions& options = {});

struct TrajectoryStep {
  double t = 0.0;
  std::vector<double> joint_angles;
  Point2 tip;
  double reward = 0.0;
};

// The first step is the reset pose at t = 0 with reward 0; each following step
// is the state after one action.
struct Trajectory {
  std::size_t target_index = 0;
  std::vector<TrajectoryStep> steps;
  Termination terminal = Termination::Timeout;
};

Trajectory evaluate(const PolicySnapshot& policy, const RLSpec& spec, std::size_t target_index);

std::string learning_curve_csv(const std::vector<EpisodeRecord>& curve);
std::string trajectory_csv(const Trajectory& trajectory);
// All trajectories in one table, prefixed with a target column.
std::string trajectories_csv(const std::vector<Trajectory>& trajectories);

// Mean final distance over curve entries in [begin, end) fractions of its length.
double mean_final_distance(const std::vector<EpisodeRecord>& curve, double begin_fraction,
                           double end_fraction);

}  // namespace roboforge

#endif  // ROBOFORGE_TRAINING_HPP_
