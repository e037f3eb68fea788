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

struct Step {
  std::vector<double> features;
  std::vector<double> u;
  double log_prob = 0.0;
  double reward = 0.0;
  double value = 0.0;
  bool terminal = false;      // success: no bootstrap
  bool last = false;          // final step of its episode
  double bootstrap = 0.0;     // value of the post-timeout state
  double advantage = 0.0;
  double ret = 0.0;
};

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

void clip_norm(std::span<double> g, double max_norm) {
  if (max_norm <= 0.0) return;
  double sq = 0.0;
  for (double x : g) sq += x * x;
  const double norm = std::sqrt(sq);
  if (norm > max_norm) {
    for (double& x : g) x *= max_norm / norm;
  }
}

struct Checkpoint {
  int reached = -1;
  double distance = 0.0;

  bool better_than(const Checkpoint& o) const {
    return reached != o.reached ? reached > o.reached : distance < o.distance;
  }
};

Checkpoint assess(const PolicySnapshot& snapshot, const RLSpec& spec) {
  Checkpoint c{0, 0.0};
  for (std::size_t t = 0; t < spec.targets.size(); ++t) {
    Trajectory traj = evaluate(snapshot, spec, t);
    if (traj.terminal == Termination::Success) ++c.reached;
    const Point2 tip = traj.steps.back().tip;
    c.distance += distance(tip, spec.targets[t]);
  }
  return c;
}

double value_of(const Mlp& net, std::span<const double> params, std::span<const double> features,
                Mlp::Cache& cache) {
  net.forward(params, features, cache);
  return cache.activations.back()[0];
}

}  // namespace

TrainingResult train_ppo(const RLSpec& spec, const PpoOptions& options) {
  validate_rlspec(spec);
  const auto start = std::chrono::steady_clock::now();
  TrainingResult result;
  result.executed = Algorithm::Kind::PPO;

  PolicyArchitecture arch = default_architecture(spec);
  arch.hidden = options.hidden;
  arch.init_log_std = options.init_log_std;
  arch.distance_scale *= options.feature_scale;
  GaussianPolicy policy(arch);

  std::vector<int> value_sizes{static_cast<int>(arch.obs_dim)};
  value_sizes.insert(value_sizes.end(), options.hidden.begin(), options.hidden.end());
  value_sizes.push_back(1);
  Mlp value_net(value_sizes, true);

  Rng rng(spec.seed);
  std::vector<double> params(policy.parameter_count());
  policy.initialize(params, rng);
  std::vector<double> vparams(value_net.parameter_count());
  value_net.initialize(vparams, rng, 1.0);

  Adam policy_opt(params.size(), options.policy_lr);
  Adam value_opt(vparams.size(), options.value_lr);
  std::vector<double> grad(params.size());
  std::vector<double> vgrad(vparams.size());
  Mlp::Cache vcache;

  const std::size_t n_targets = spec.targets.size();
  PolicySnapshot best{arch, params};
  Checkpoint best_score;
  int episode = 0;
  while (episode < spec.episodes && !result.failed) {
    // Collect a batch of whole episodes.
    std::vector<Step> steps;
    const int batch_start = episode;
    const int batch_end = std::min(spec.episodes, episode + options.episodes_per_batch);
    for (; episode < batch_end; ++episode) {
      const std::size_t target = static_cast<std::size_t>(episode) % n_targets;
      auto [state, obs] = env_reset(spec, target, rng.next());
      double total = 0.0;
      for (;;) {
        Step s;
        s.features = policy.features(obs);
        s.u = policy.sample(params, s.features, rng);
        s.log_prob = policy.log_prob(params, s.features, s.u);
        s.value = value_of(value_net, vparams, s.features, vcache);
        std::vector<double> action = s.u;
        for (double& a : action) a *= arch.action_limit;
        StepResult r = env_step(state, action, spec);
        total += r.reward;
        s.reward = r.reward * options.reward_scale;
        state = std::move(r.state);
        obs = std::move(r.observation);
        if (r.done != Termination::Running) {
          s.last = true;
          s.terminal = r.done == Termination::Success;
          if (!s.terminal) s.bootstrap = value_of(value_net, vparams, policy.features(obs), vcache);
          steps.push_back(std::move(s));
          break;
        }
        steps.push_back(std::move(s));
      }
      result.learning_curve.push_back({episode, total, obs.distance});
      if (!std::isfinite(total)) {
        result.failed = true;
        result.diagnostic = fmt::format("non-finite episode return at episode {}", episode);
        ++episode;
        break;
      }
    }
    if (result.failed) break;

    // Generalized advantage estimation, episode by episode (backwards).
    double next_value = 0.0, gae = 0.0;
    for (std::size_t i = steps.size(); i-- > 0;) {
      Step& s = steps[i];
      if (s.last) {
        next_value = s.terminal ? 0.0 : s.bootstrap;
        gae = 0.0;
      }
      const double delta = s.reward + options.gamma * next_value - s.value;
      gae = delta + options.gamma * options.lambda * gae;
      s.advantage = gae;
      s.ret = gae + s.value;
      next_value = s.value;
    }
    double mean = 0.0, sq = 0.0;
    for (const auto& s : steps) mean += s.advantage;
    mean /= static_cast<double>(steps.size());
    for (const auto& s : steps) sq += (s.advantage - mean) * (s.advantage - mean);
    const double sd = std::sqrt(sq / static_cast<double>(steps.size())) + 1e-8;
    for (auto& s : steps) s.advantage = (s.advantage - mean) / sd;

    if (options.anneal_lr) {
      const double frac = 1.0 - static_cast<double>(batch_start) / spec.episodes;
      policy_opt.set_learning_rate(options.policy_lr * std::max(frac, 0.0));
      value_opt.set_learning_rate(options.value_lr * std::max(frac, 0.0));
    }
    std::vector<std::size_t> order(steps.size());
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < options.epochs && !result.failed; ++epoch) {
      for (std::size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[static_cast<std::size_t>(rng.next() % i)]);
      }
      for (std::size_t lo = 0; lo < order.size(); lo += static_cast<std::size_t>(options.minibatch)) {
        const std::size_t hi = std::min(order.size(), lo + static_cast<std::size_t>(options.minibatch));
        SurrogateBatch batch;
        for (std::size_t j = lo; j < hi; ++j) {
          const Step& s = steps[order[j]];
          batch.features.push_back(s.features);
          batch.actions.push_back(s.u);
          batch.advantages.push_back(s.advantage);
          batch.old_log_probs.push_back(s.log_prob);
        }
        const double objective = policy.surrogate_gradient(params, batch, options.clip, grad);
        if (arch.learn_log_std && options.entropy_coef != 0.0) {
          // Entropy of a diagonal Gaussian grows with each log-std at rate 1.
          for (std::size_t k = 0; k < arch.act_dim; ++k) grad[params.size() - arch.act_dim + k] += options.entropy_coef;
        }
        for (double& g : grad) g = -g;  // ascend the surrogate
        std::fill(vgrad.begin(), vgrad.end(), 0.0);
        const double inv = 1.0 / static_cast<double>(hi - lo);
        for (std::size_t j = lo; j < hi; ++j) {
          const Step& s = steps[order[j]];
          const double v = value_of(value_net, vparams, s.features, vcache);
          const double dv = 2.0 * (v - s.ret) * inv;
          value_net.backward(vparams, vcache, std::span<const double>(&dv, 1), vgrad);
        }
        if (!std::isfinite(objective) || !all_finite(grad) || !all_finite(vgrad)) {
          result.failed = true;
          result.diagnostic = fmt::format("non-finite loss or gradient after episode {}", episode);
          break;
        }
        clip_norm(grad, options.max_grad_norm);
        clip_norm(vgrad, options.max_grad_norm);
        policy_opt.step(params, grad);
        value_opt.step(vparams, vgrad);
      }
    }
    if (options.keep_best && !result.failed && all_finite(params)) {
      PolicySnapshot current{arch, params};
      Checkpoint score = assess(current, spec);
      if (score.better_than(best_score)) {
        best_score = score;
        best = std::move(current);
      }
    }
  }

  result.policy = options.keep_best && best_score.reached >= 0 ? best : PolicySnapshot{arch, params};
  result.success.assign(n_targets, false);
  if (!result.failed && all_finite(params)) {
    for (std::size_t t = 0; t < n_targets && spec.episodes > 0; ++t) {
      result.success[t] = evaluate(result.policy, spec, t).terminal == Termination::Success;
    }
  }
  result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace roboforge
