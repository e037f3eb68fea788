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

#include "roboforge/mlp.hpp"

#include <cmath>
#include <stdexcept>

namespace roboforge {

Mlp::Mlp(std::vector<int> sizes, bool bias) : sizes_(std::move(sizes)), bias_(bias) {
  if (sizes_.size() < 2) throw std::invalid_argument("Mlp: need at least input and output sizes");
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    if (sizes_[l] < 1 || sizes_[l + 1] < 1) throw std::invalid_argument("Mlp: layer size < 1");
    parameter_count_ += static_cast<std::size_t>(sizes_[l] * sizes_[l + 1]);
    if (bias_) parameter_count_ += static_cast<std::size_t>(sizes_[l + 1]);
  }
}

void Mlp::initialize(std::span<double> params, Rng& rng, double output_scale) const {
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l], out = sizes_[l + 1];
    const bool last = l + 2 == sizes_.size();
    const double scale = (last ? output_scale : 1.0) / std::sqrt(static_cast<double>(in));
    for (int i = 0; i < in * out; ++i) params[offset++] = rng.normal() * scale;
    if (bias_) {
      for (int i = 0; i < out; ++i) params[offset++] = 0.0;
    }
  }
}

void Mlp::forward(std::span<const double> params, std::span<const double> input,
                  Cache& cache) const {
  cache.activations.resize(sizes_.size());
  cache.activations[0].assign(input.begin(), input.end());
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    const int in = sizes_[l], out = sizes_[l + 1];
    const auto& x = cache.activations[l];
    auto& y = cache.activations[l + 1];
    y.assign(static_cast<std::size_t>(out), 0.0);
    const double* w = params.data() + offset;
    for (int o = 0; o < out; ++o) {
      double acc = 0.0;
      const double* row = w + static_cast<std::ptrdiff_t>(o) * in;
      for (int i = 0; i < in; ++i) acc += row[i] * x[static_cast<std::size_t>(i)];
      y[static_cast<std::size_t>(o)] = acc;
    }
    offset += static_cast<std::size_t>(in * out);
    if (bias_) {
      for (int o = 0; o < out; ++o) y[static_cast<std::size_t>(o)] += params[offset + static_cast<std::size_t>(o)];
      offset += static_cast<std::size_t>(out);
    }
    if (l + 2 < sizes_.size()) {
      for (double& v : y) v = std::tanh(v);
    }
  }
}

void Mlp::backward(std::span<const double> params, const Cache& cache,
                   std::span<const double> grad_output, std::span<double> grad) const {
  // Offsets of each layer's weights.
  std::vector<std::size_t> offsets(sizes_.size() - 1);
  std::size_t offset = 0;
  for (std::size_t l = 0; l + 1 < sizes_.size(); ++l) {
    offsets[l] = offset;
    offset += static_cast<std::size_t>(sizes_[l] * sizes_[l + 1]);
    if (bias_) offset += static_cast<std::size_t>(sizes_[l + 1]);
  }

  std::vector<double> delta(grad_output.begin(), grad_output.end());
  for (std::size_t l = sizes_.size() - 1; l-- > 0;) {
    const int in = sizes_[l], out = sizes_[l + 1];
    const auto& x = cache.activations[l];
    const double* w = params.data() + offsets[l];
    double* gw = grad.data() + offsets[l];
    for (int o = 0; o < out; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      double* grow = gw + static_cast<std::ptrdiff_t>(o) * in;
      for (int i = 0; i < in; ++i) grow[i] += d * x[static_cast<std::size_t>(i)];
    }
    if (bias_) {
      double* gb = gw + static_cast<std::ptrdiff_t>(in) * out;
      for (int o = 0; o < out; ++o) gb[o] += delta[static_cast<std::size_t>(o)];
    }
    if (l == 0) break;
    std::vector<double> prev(static_cast<std::size_t>(in), 0.0);
    for (int o = 0; o < out; ++o) {
      const double d = delta[static_cast<std::size_t>(o)];
      const double* row = w + static_cast<std::ptrdiff_t>(o) * in;
      for (int i = 0; i < in; ++i) prev[static_cast<std::size_t>(i)] += row[i] * d;
    }
    // x is a tanh output for every layer but the input.
    for (int i = 0; i < in; ++i) {
      const double a = x[static_cast<std::size_t>(i)];
      prev[static_cast<std::size_t>(i)] *= 1.0 - a * a;
    }
    delta = std::move(prev);
  }
}

Adam::Adam(std::size_t size, double learning_rate, double beta1, double beta2, double epsilon)
    : lr_(learning_rate), beta1_(beta1), beta2_(beta2), eps_(epsilon), m_(size, 0.0), v_(size, 0.0) {}

void Adam::step(std::span<double> params, std::span<const double> grad) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m_[i] = beta1_ * m_[i] + (1.0 - beta1_) * grad[i];
    v_[i] = beta2_ * v_[i] + (1.0 - beta2_) * grad[i] * grad[i];
    params[i] -= lr_ * (m_[i] / c1) / (std::sqrt(v_[i] / c2) + eps_);
  }
}

}  // namespace roboforge
