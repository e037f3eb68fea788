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

#ifndef ROBOFORGE_MLP_HPP_
#define ROBOFORGE_MLP_HPP_

#include <span>
#include <vector>

#include "roboforge/random.hpp"

namespace roboforge {

// Fully connected network with tanh hidden layers and a linear output layer.
// Parameters live in an external flat buffer: for each layer, the weight
// matrix (row-major, out x in) followed by the bias vector when enabled.
class Mlp {
 public:
  struct Cache {
    std::vector<std::vector<double>> activations;  // input, hidden..., output
  };

  Mlp() = default;
  Mlp(std::vector<int> sizes, bool bias);

  std::size_t parameter_count() const { return parameter_count_; }
  int input_size() const { return sizes_.front(); }
  int output_size() const { return sizes_.back(); }
  const std::vector<int>& sizes() const { return sizes_; }
  bool bias() const { return bias_; }

  // Scaled-normal weights (1/sqrt(fan_in)), zero biases; the output layer is
  // further multiplied by output_scale.
  void initialize(std::span<double> params, Rng& rng, double output_scale) const;

  void forward(std::span<const double> params, std::span<const double> input, Cache& cache) const;

  // Accumulates dLoss/dparams into grad given dLoss/doutput.
  void backward(std::span<const double> params, const Cache& cache,
                std::span<const double> grad_output, std::span<double> grad) const;

 private:
  std::vector<int> sizes_;
  bool bias_ = true;
  std::size_t parameter_count_ = 0;
};

// Adam on a flat parameter vector; step() descends the given gradient.
class Adam {
 public:
  Adam(std::size_t size, double learning_rate, double beta1 = 0.9, double beta2 = 0.999,
       double epsilon = 1e-8);

  void step(std::span<double> params, std::span<const double> grad);
  void set_learning_rate(double lr) { lr_ = lr; }

 private:
  double lr_, beta1_, beta2_, eps_;
  std::vector<double> m_, v_;
  long long t_ = 0;
};

}  // namespace roboforge

#endif  // ROBOFORGE_MLP_HPP_
