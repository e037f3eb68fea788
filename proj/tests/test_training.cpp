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

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "roboforge/arm_design.hpp"
#include "roboforge/error.hpp"
#include "roboforge/kinematics.hpp"
#include "roboforge/scenario.hpp"
#include "roboforge/training.hpp"

namespace roboforge {
namespace {

RLSpec row_spec(int row, double margin = 0.0) {
  auto design = design_robots(DesignProblem::from(builtin_scenarios()[row - 1]), 3, margin);
  return default_rlspec(design, 0);
}

double last_fraction_mean(const std::vector<EpisodeRecord>& curve, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = curve.size() - n; i < curve.size(); ++i) s += curve[i].final_distance;
  return s / static_cast<double>(n);
}

TEST(Ppo, RowOneSeedSevenReachesAllTargets) {
  RLSpec spec = row_spec(1);
  spec.seed = 7;
  spec.episodes = 300;
  auto r = train_ppo(spec);
  ASSERT_FALSE(r.failed) << r.diagnostic;
  ASSERT_EQ(r.learning_curve.size(), 300u);
  EXPECT_TRUE(r.all_succeeded());
  EXPECT_LT(last_fraction_mean(r.learning_curve, 20), 0.05);
  for (std::size_t i = 0; i < r.learning_curve.size(); ++i) EXPECT_EQ(r.learning_curve[i].episode, static_cast<int>(i));
}

TEST(Ppo, ZeroEpisodes) {
  RLSpec spec = row_spec(1);
  spec.episodes = 0;
  auto r = train_ppo(spec);
  EXPECT_FALSE(r.failed);
  EXPECT_TRUE(r.learning_curve.empty());
  ASSERT_EQ(r.success.size(), spec.targets.size());
  for (bool s : r.success) EXPECT_FALSE(s);
  EXPECT_FALSE(r.all_succeeded());
}

TEST(Ppo, DeterministicForSeed) {
  RLSpec spec = row_spec(3);
  spec.episodes = 40;
  auto a = train_ppo(spec), b = train_ppo(spec);
  EXPECT_EQ(a.learning_curve, b.learning_curve);
  EXPECT_EQ(a.policy.parameters, b.policy.parameters);
  spec.seed = 8;
  auto c = train_ppo(spec);
  EXPECT_NE(a.learning_curve, c.learning_curve);
}

TEST(Ppo, NonFiniteRewardFails) {
  RLSpec spec = row_spec(1);
  spec.episodes = 10;
  spec.reward.distance_w = std::numeric_limits<double>::max();
  auto r = train_ppo(spec);
  EXPECT_TRUE(r.failed);
  EXPECT_FALSE(r.diagnostic.empty());
  EXPECT_FALSE(r.all_succeeded());
}

TEST(Cem, RowOneWithinBudget) {
  RLSpec spec = row_spec(1);
  spec.algorithm.kind = Algorithm::Kind::CEM;
  spec.episodes = 150;
  auto r = train(spec);
  ASSERT_FALSE(r.failed) << r.diagnostic;
  EXPECT_TRUE(r.all_succeeded());
  EXPECT_LE(r.learning_curve.size(), 150u);
  EXPECT_EQ(r.executed, Algorithm::Kind::CEM);
}

TEST(Cem, NonFiniteRewardFails) {
  RLSpec spec = row_spec(1);
  spec.algorithm.kind = Algorithm::Kind::CEM;
  spec.episodes = 5;
  spec.reward.distance_w = std::numeric_limits<double>::max();
  EXPECT_TRUE(train_cem(spec).failed);
}

TEST(Train, SacRunsAsPpoWithNote) {
  RLSpec spec = row_spec(1);
  spec.algorithm.kind = Algorithm::Kind::SAC;
  spec.episodes = 4;
  auto r = train(spec);
  EXPECT_EQ(r.executed, Algorithm::Kind::PPO);
  ASSERT_FALSE(r.deviations.empty());
  EXPECT_NE(r.deviations.front().find("SAC"), std::string::npos);
}

TEST(Train, RejectsInvalidSpec) {
  RLSpec spec = row_spec(1);
  spec.dt = 0.0;
  EXPECT_THROW(train(spec), ValidationError);
}

TEST(Evaluate, TrajectoryInvariants) {
  RLSpec spec = row_spec(1);
  spec.episodes = 300;
  auto r = train_ppo(spec);
  for (std::size_t k = 0; k < spec.targets.size(); ++k) {
    auto t = evaluate(r.policy, spec, k);
    ASSERT_GE(t.steps.size(), 2u);
    EXPECT_EQ(t.target_index, k);
    EXPECT_EQ(t.steps.front().t, 0.0);
    EXPECT_EQ(t.steps.front().reward, 0.0);
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
      const auto& s = t.steps[i];
      EXPECT_NEAR(s.t, static_cast<double>(i) * spec.dt, 1e-12);
      Point2 fk = tip_position(spec.links, s.joint_angles, spec.base);
      EXPECT_NEAR(s.tip.x, fk.x, 1e-12);
      EXPECT_NEAR(s.tip.y, fk.y, 1e-12);
    }
    EXPECT_LE(static_cast<int>(t.steps.size()) - 1, spec.max_steps_per_episode);
    const auto& end = t.steps.back().tip;
    const double d = std::hypot(spec.targets[k].x - end.x, spec.targets[k].y - end.y);
    EXPECT_EQ(t.terminal == Termination::Success, d < spec.success_epsilon);
    EXPECT_EQ(r.success[k], t.terminal == Termination::Success);
  }
}

TEST(Evaluate, UntrainedPolicyRunsToCompletion) {
  RLSpec spec = row_spec(1);
  spec.episodes = 0;
  auto r = train_ppo(spec);
  auto t = evaluate(r.policy, spec, 0);
  EXPECT_NE(t.terminal, Termination::Running);
}

TEST(Evaluate, GeometryMismatchThrows) {
  RLSpec spec = row_spec(1);
  spec.episodes = 0;
  auto r = train_ppo(spec);
  RLSpec other = spec;
  other.links.push_back(0.8);
  EXPECT_THROW(evaluate(r.policy, other, 0), std::invalid_argument);
  PolicySnapshot bad = r.policy;
  bad.parameters.pop_back();
  EXPECT_THROW(evaluate(bad, spec, 0), std::invalid_argument);
}

TEST(Csv, Headers) {
  std::vector<EpisodeRecord> curve{{0, -3.5, 0.4}, {1, -1.25, 0.125}};
  EXPECT_EQ(learning_curve_csv(curve), "episode,total_reward,final_distance\n0,-3.5,0.4\n1,-1.25,0.125\n");
  Trajectory t;
  t.steps.push_back({0.0, {0.0, 0.0}, {1.6, 0.0}, 0.0});
  auto csv = trajectory_csv(t);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "t,theta_1,theta_2,tip_x,tip_y,reward");
  auto all = trajectories_csv({t});
  EXPECT_EQ(all.substr(0, all.find('\n')), "target,t,theta_1,theta_2,tip_x,tip_y,reward");
}

TEST(Csv, MeanFinalDistance) {
  std::vector<EpisodeRecord> curve;
  for (int i = 0; i < 10; ++i) curve.push_back({i, 0.0, static_cast<double>(i)});
  EXPECT_DOUBLE_EQ(mean_final_distance(curve, 0.0, 0.1), 0.0);
  EXPECT_DOUBLE_EQ(mean_final_distance(curve, 0.9, 1.0), 9.0);
  EXPECT_DOUBLE_EQ(mean_final_distance(curve, 0.0, 1.0), 4.5);
}

}  // namespace
}  // namespace roboforge
