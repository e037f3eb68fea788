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

#include "roboforge/policy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace roboforge {

namespace {

std::vector<int> layer_sizes(const PolicyArchitecture& arch) {
  std::vector<int> sizes;
  sizes.push_back(static_cast<int>(arch.obs_dim));
  sizes.insert(sizes.end(), arch.hidden.begin(), arch.hidden.end());
  sizes.push_back(static_cast<int>(arch.act_dim));
  return sizes;
}

const double kLogSqrt2Pi = 0.5 * std::log(2.0 * std::numbers::pi);

}  // namespace

PolicyArchitecture default_architecture(const RLSpec& spec) {
  PolicyArchitecture arch;
  arch.obs_dim = Observation::dimension(spec.links.size());
  arch.act_dim = spec.links.size();
  // A quarter of the reach keeps the near-target deltas large enough for the
  // network to resolve the success radius.
  arch.distance_scale = 0.25 * std::accumulate(spec.links.begin(), spec.links.end(), 0.0);
  arch.action_limit = spec.action_limit;
  return arch;
}

GaussianPolicy::GaussianPolicy(PolicyArchitecture arch)
    : arch_(std::move(arch)), net_(layer_sizes(arch_), arch_.bias) {
  if (arch_.obs_dim == 0 || arch_.act_dim == 0) {
    throw std::invalid_argument("GaussianPolicy: empty observation or action");
  }
  if (!(arch_.distance_scale > 0.0) || !(arch_.action_limit > 0.0)) {
    throw std::invalid_argument("GaussianPolicy: scales must be positive");
  }
}

std::size_t GaussianPolicy::parameter_count() const {
  return net_.parameter_count() + (arch_.learn_log_std ? arch_.act_dim : 0);
}

void GaussianPolicy::initialize(std::span<double> params, Rng& rng) const {
  if (params.size() != parameter_count()) throw std::invalid_argument("initialize: size mismatch");
  net_.initialize(params.first(net_.parameter_count()), rng, 0.1);
  for (std::size_t i = net_.parameter_count(); i < params.size(); ++i) params[i] = arch_.init_log_std;
}

std::vector<double> GaussianPolicy::features(const Observation& obs) const {
  std::vector<double> f = obs.to_vector();
  if (f.size() != arch_.obs_dim) throw std::invalid_argument("features: observation size mismatch");
  for (std::size_t i = f.size() - 3; i < f.size(); ++i) f[i] /= arch_.distance_scale;
  return f;
}

std::vector<double> GaussianPolicy::mean(std::span<const double> params,
                                         std::span<const double> features) const {
  Mlp::Cache cache;
  net_.forward(params, features, cache);
  return cache.activations.back();
}

std::vector<double> GaussianPolicy::log_std(std::span<const double> params) const {
  if (!arch_.learn_log_std) return std::vector<double>(arch_.act_dim, arch_.init_log_std);
  auto tail = params.subspan(net_.parameter_count());
  return {tail.begin(), tail.end()};
}

std::vector<double> GaussianPolicy::sample(std::span<const double> params,
                                           std::span<const double> features, Rng& rng) const {
  std::vector<double> mu = mean(params, features);
  std::vector<double> ls = log_std(params);
  for (std::size_t k = 0; k < mu.size(); ++k) mu[k] += std::exp(ls[k]) * rng.normal();
  return mu;
}

double GaussianPolicy::log_prob(std::span<const double> params, std::span<const double> features,
                                std::span<const double> u) const {
  std::vector<double> mu = mean(params, features);
  std::vector<double> ls = log_std(params);
  double lp = 0.0;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double z = (u[k] - mu[k]) / std::exp(ls[k]);
    lp += -0.5 * z * z - ls[k] - kLogSqrt2Pi;
  }
  return lp;
}

std::vector<double> GaussianPolicy::act(std::span<const double> params, const Observation& obs) const {
  std::vector<double> a = mean(params, features(obs));
  for (double& v : a) v *= arch_.action_limit;
  return a;
}

double GaussianPolicy::surrogate(std::span<const double> params, const SurrogateBatch& batch,
                                 double clip) const {
  if (batch.size() == 0) throw std::invalid_argument("surrogate: empty batch");
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    const double r = std::exp(log_prob(params, batch.features[i], batch.actions[i]) - batch.old_log_probs[i]);
    const double a = batch.advantages[i];
    total += std::min(r * a, std::clamp(r, 1.0 - clip, 1.0 + clip) * a);
  }
  return total / static_cast<double>(batch.size());
}

double GaussianPolicy::surrogate_gradient(std::span<const double> params, const SurrogateBatch& batch,
                                          double clip, std::span<double> grad) const {
  if (batch.size() == 0) throw std::invalid_argument("surrogate_gradient: empty batch");
  if (grad.size() != parameter_count()) throw std::invalid_argument("surrogate_gradient: size mismatch");
  std::fill(grad.begin(), grad.end(), 0.0);
  const std::vector<double> ls = log_std(params);
  const std::size_t n_net = net_.parameter_count();
  const double inv_n = 1.0 / static_cast<double>(batch.size());
  Mlp::Cache cache;
  std::vector<double> grad_mu(arch_.act_dim);
  double total = 0.0;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    net_.forward(params, batch.features[i], cache);
    const auto& mu = cache.activations.back();
    double lp = 0.0;
    for (std::size_t k = 0; k < arch_.act_dim; ++k) {
      const double z = (batch.actions[i][k] - mu[k]) / std::exp(ls[k]);
      lp += -0.5 * z * z - ls[k] - kLogSqrt2Pi;
    }
    const double r = std::exp(lp - batch.old_log_probs[i]);
    const double a = batch.advantages[i];
    const double unclipped = r * a;
    const double clipped = std::clamp(r, 1.0 - clip, 1.0 + clip) * a;
    total += std::min(unclipped, clipped);
    // The clipped branch is constant in params, so only the unclipped branch
    // (when it is the minimum) carries gradient.
    if (!(unclipped <= clipped)) continue;
    const double w = a * r * inv_n;  // d/d logp
    if (w == 0.0) continue;
    for (std::size_t k = 0; k < arch_.act_dim; ++k) {
      const double sigma = std::exp(ls[k]);
      const double diff = batch.actions[i][k] - mu[k];
      grad_mu[k] = w * diff / (sigma * sigma);
      if (arch_.learn_log_std) grad[n_net + k] += w * (diff * diff / (sigma * sigma) - 1.0);
    }
    net_.backward(params, cache, grad_mu, grad.first(n_net));
  }
  return total * inv_n;
}

double gradient_check(const GaussianPolicy& policy, std::span<const double> params,
                      const SurrogateBatch& batch, double clip, double h) {
  if (batch.size() == 0) throw std::invalid_argument("gradient_check: empty batch");
  std::vector<double> analytic(policy.parameter_count());
  policy.surrogate_gradient(params, batch, clip, analytic);
  std::vector<double> p(params.begin(), params.end());
  double worst = 0.0;
  for (std::size_t j = 0; j < p.size(); ++j) {
    const double saved = p[j];
    p[j] = saved + h;
    const double up = policy.surrogate(p, batch, clip);
    p[j] = saved - h;
    const double down = policy.surrogate(p, batch, clip);
    p[j] = saved;
    const double fd = (up - down) / (2.0 * h);
    const double err = std::abs(analytic[j] - fd) / std::max(std::abs(analytic[j]) + std::abs(fd), 1e-6);
    worst = std::max(worst, err);
  }
  return worst;
}

double gradient_check(const PolicyArchitecture& arch, std::size_t batch_size, std::uint64_t seed,
                      double clip, double h) {
  GaussianPolicy policy(arch);
  Rng rng(seed);
  std::vector<double> params(policy.parameter_count());
  policy.initialize(params, rng);
  // Larger output weights than the training init so the mean is not near zero.
  for (double& v : params) v += 0.3 * rng.normal();
  SurrogateBatch batch;
  for (std::size_t i = 0; i < batch_size; ++i) {
    std::vector<double> f(arch.obs_dim);
    for (double& v : f) v = rng.uniform(-1.0, 1.0);
    std::vector<double> u = policy.sample(params, f, rng);
    const double lp = policy.log_prob(params, f, u);
    // Ratios land in (1 - clip/2, 1 + clip/2) or well outside the clip range,
    // keeping every sample a finite distance from the kinks.
    const double offset = (i % 3 == 0) ? rng.uniform(-0.5, 0.5) * clip
                                       : (rng.uniform() < 0.5 ? -1.0 : 1.0) * 3.0 * clip;
    batch.features.push_back(std::move(f));
    batch.actions.push_back(std::move(u));
    batch.advantages.push_back(rng.normal());
    batch.old_log_probs.push_back(lp - offset);
  }
  return gradient_check(policy, params, batch, clip, h);
}

}  // namespace roboforge
