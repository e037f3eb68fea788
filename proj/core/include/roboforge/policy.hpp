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

#ifndef ROBOFORGE_POLICY_HPP_
#define ROBOFORGE_POLICY_HPP_

#include <span>
#include <vector>

#include "roboforge/mlp.hpp"
#include "roboforge/random.hpp"
#include "roboforge/rl_env.hpp"

namespace roboforge {

struct PolicyArchitecture {
  std::size_t obs_dim = 0;
  std::size_t act_dim = 0;
  std::vector<int> hidden{32, 32};
  bool bias = true;
  bool learn_log_std = true;
  double init_log_std = -0.5;
  double distance_scale = 1.0;  // divides dx, dy, distance before the network
  double action_limit = 1.0;    // network output u maps to env action u * action_limit

  friend bool operator==(const PolicyArchitecture&, const PolicyArchitecture&) = default;
};

PolicyArchitecture default_architecture(const RLSpec& spec);

struct PolicySnapshot {
  PolicyArchitecture architecture;
  std::vector<double> parameters;
};

// Samples in the batch use normalized actions u (before the action_limit scale).
struct SurrogateBatch {
  std::vector<std::vector<double>> features;
  std::vector<std::vector<double>> actions;
  std::vector<double> advantages;
  std::vector<double> old_log_probs;

  std::size_t size() const { return features.size(); }
};

// Diagonal Gaussian over u with an MLP mean. Parameter layout: mean network,
// then one log-std per action dimension when learn_log_std is set.
class GaussianPolicy {
 public:
  explicit GaussianPolicy(PolicyArchitecture arch);

  const PolicyArchitecture& architecture() const { return arch_; }
  std::size_t parameter_count() const;

  void initialize(std::span<double> params, Rng& rng) const;

  std::vector<double> features(const Observation& obs) const;
  std::vector<double> mean(std::span<const double> params, std::span<const double> features) const;
  std::vector<double> log_std(std::span<const double> params) const;

  // Returns u; the env action is u * action_limit.
  std::vector<double> sample(std::span<const double> params, std::span<const double> features,
                             Rng& rng) const;
  double log_prob(std::span<const double> params, std::span<const double> features,
                  std::span<const double> u) const;

  // Env-unit action with no exploration noise.
  std::vector<double> act(std::span<const double> params, const Observation& obs) const;

  // Mean over the batch of min(r A, clip(r, 1 - c, 1 + c) A).
  double surrogate(std::span<const double> params, const SurrogateBatch& batch, double clip) const;
  // Writes d surrogate / d params into grad (overwritten) and returns the surrogate.
  double surrogate_gradient(std::span<const double> params, const SurrogateBatch& batch,
                            double clip, std::span<double> grad) const;

 private:
  PolicyArchitecture arch_;
  Mlp net_;
};

// Max over parameters of |analytic - fd| / max(|analytic| + |fd|, 1e-6), with
// central differences of step h.
double gradient_check(const GaussianPolicy& policy, std::span<const double> params,
                      const SurrogateBatch& batch, double clip, double h = 1e-5);

// Random parameters and batch of the given size; old log-probs are offset from
// the current ones so no ratio sits on a clip boundary.
double gradient_check(const PolicyArchitecture& arch, std::size_t batch_size, std::uint64_t seed,
                      double clip = 0.2, double h = 1e-5);

}  // namespace roboforge

#endif  // ROBOFORGE_POLICY_HPP_
