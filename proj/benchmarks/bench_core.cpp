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

#include <benchmark/benchmark.h>

#include <vector>

#include "roboforge/arm_design.hpp"
#include "roboforge/kinematics.hpp"
#include "roboforge/policy.hpp"
#include "roboforge/random.hpp"
#include "roboforge/rl_env.hpp"
#include "roboforge/scenario.hpp"

namespace roboforge {
namespace {

void BM_ForwardKinematics(benchmark::State& state) {
  const std::vector<double> links{0.9, 0.7, 0.5};
  std::vector<double> angles{0.3, -0.8, 1.1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tip_position(links, angles, {0.0, 0.0}));
    angles[0] += 1e-3;
  }
}
BENCHMARK(BM_ForwardKinematics);

void BM_SolveIk(benchmark::State& state) {
  const ArmConfiguration arm{{0.8, 0.8}, {0.5, 0.0}};
  for (auto _ : state) benchmark::DoNotOptimize(solve_ik(arm, {0.8, 1.5}));
}
BENCHMARK(BM_SolveIk);

void BM_DesignRobots(benchmark::State& state) {
  const auto problem = DesignProblem::from(builtin_scenarios()[static_cast<std::size_t>(state.range(0))]);
  for (auto _ : state) benchmark::DoNotOptimize(design_robots(problem, 3, kDefaultDesignMargin));
}
BENCHMARK(BM_DesignRobots)->DenseRange(0, 9);

void BM_EnvStep(benchmark::State& state) {
  const auto spec = default_rlspec(design_robots(DesignProblem::from(builtin_scenarios()[0]), 3, 0.0));
  auto [env, obs] = env_reset(spec, 0, 1);
  const std::vector<double> action{0.2, -0.1};
  for (auto _ : state) {
    auto r = env_step(env, action, spec);
    env = r.done == Termination::Running ? std::move(r.state) : env_reset(spec, 0, 1).first;
  }
}
BENCHMARK(BM_EnvStep);

void BM_SurrogateGradient(benchmark::State& state) {
  PolicyArchitecture arch;
  arch.obs_dim = 7;
  arch.act_dim = 2;
  GaussianPolicy policy(arch);
  std::vector<double> params(policy.parameter_count());
  Rng rng(3);
  policy.initialize(params, rng);
  SurrogateBatch batch;
  for (int i = 0; i < state.range(0); ++i) {
    std::vector<double> f(7), u(2);
    for (auto& x : f) x = rng.uniform(-1, 1);
    for (auto& x : u) x = rng.uniform(-1, 1);
    batch.old_log_probs.push_back(policy.log_prob(params, f, u));
    batch.features.push_back(std::move(f));
    batch.actions.push_back(std::move(u));
    batch.advantages.push_back(rng.normal());
  }
  std::vector<double> grad(params.size());
  for (auto _ : state) benchmark::DoNotOptimize(policy.surrogate_gradient(params, batch, 0.2, grad));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SurrogateGradient)->Arg(64)->Arg(400);

}  // namespace
}  // namespace roboforge

BENCHMARK_MAIN();
