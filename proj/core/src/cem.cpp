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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "roboforge/training.hpp"

namespace roboforge {

namespace {

struct Rollout {
  double total_reward = 0.0;
  double final_distance = 0.0;
  bool success = false;
};

Rollout rollout(const GaussianPolicy& policy, std::span<const double> params, const RLSpec& spec,
                std::size_t target) {
  auto [state, obs] = env_reset(spec, target, 0, 0.0);
  Rollout out;
  for (;;) {
    StepResult r = env_step(state, policy.act(params, obs), spec);
    out.total_reward += r.reward;
    state = std::move(r.state);
    obs = std::move(r.observation);
    if (r.done != Termination::Running) {
      out.success = r.done == Termination::Success;
      break;
    }
  }
  out.final_distance = obs.distance;
  return out;
}

}  // namespace

TrainingResult train_cem(const RLSpec& spec, const CemOptions& options) {
  validate_rlspec(spec);
  const auto start = std::chrono::steady_clock::now();
  TrainingResult result;
  result.executed = Algorithm::Kind::CEM;

  PolicyArchitecture arch = default_architecture(spec);
  arch.hidden = options.hidden;
  arch.learn_log_std = false;
  GaussianPolicy policy(arch);
  const std::size_t dim = policy.parameter_count();
  const std::size_t n_targets = spec.targets.size();
  const int elites = std::max(1, static_cast<int>(std::lround(options.elite_fraction * options.population)));

  Rng rng(spec.seed);
  std::vector<double> mean(dim);
  policy.initialize(mean, rng);
  std::vector<double> sd(dim, options.init_std);

  auto score_mean = [&](std::vector<Rollout>& per_target) {
    per_target.clear();
    for (std::size_t t = 0; t < n_targets; ++t) per_target.push_back(rollout(policy, mean, spec, t));
  };

  std::vector<Rollout> mean_rollouts;
  std::vector<std::vector<double>> population(static_cast<std::size_t>(options.population), std::vector<double>(dim));
  std::vector<double> fitness(population.size());
  for (int gen = 0; gen < spec.episodes; ++gen) {
    for (std::size_t p = 0; p < population.size(); ++p) {
      for (std::size_t j = 0; j < dim; ++j) population[p][j] = mean[j] + sd[j] * rng.normal();
      double f = 0.0;
      for (std::size_t t = 0; t < n_targets; ++t) f += rollout(policy, population[p], spec, t).total_reward;
      fitness[p] = std::isfinite(f) ? f : -INFINITY;
    }
    std::vector<std::size_t> order(population.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fitness[a] > fitness[b]; });
    for (std::size_t j = 0; j < dim; ++j) {
      double m = 0.0;
      for (int e = 0; e < elites; ++e) m += population[order[static_cast<std::size_t>(e)]][j];
      m /= elites;
      double v = 0.0;
      for (int e = 0; e < elites; ++e) {
        const double d = population[order[static_cast<std::size_t>(e)]][j] - m;
        v += d * d;
      }
      mean[j] = m;
      sd[j] = std::sqrt(v / elites) + options.extra_std;
    }

    score_mean(mean_rollouts);
    EpisodeRecord rec{gen, 0.0, 0.0};
    bool all = true;
    for (const auto& r : mean_rollouts) {
      rec.total_reward += r.total_reward / static_cast<double>(n_targets);
      rec.final_distance += r.final_distance / static_cast<double>(n_targets);
      all = all && r.success;
    }
    result.learning_curve.push_back(rec);
    if (!std::isfinite(rec.total_reward)) {
      result.failed = true;
      result.diagnostic = fmt::format("non-finite return at generation {}", gen);
      break;
    }
    if (all) break;
  }

  result.policy = {arch, mean};
  result.success.assign(n_targets, false);
  if (!result.failed && spec.episodes > 0) {
    for (std::size_t t = 0; t < n_targets; ++t) {
      result.success[t] = evaluate(result.policy, spec, t).terminal == Termination::Success;
    }
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace roboforge
