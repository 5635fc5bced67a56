// Copyright 2026 The fogdeploy Authors
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

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fogdeploy/rng.hpp"

namespace fogdeploy {

// Fully connected layer y = W x + b. weights is out x in.
struct DenseLayer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;

  bool operator==(const DenseLayer& o) const {
    return weights.rows() == o.weights.rows() && weights.cols() == o.weights.cols() &&
           weights == o.weights && bias == o.bias;
  }
};

// Feedforward Q-network: rectifier on hidden layers, identity on the output.
class ValueNetwork {
 public:
  ValueNetwork() = default;
  explicit ValueNetwork(std::vector<DenseLayer> layers);

  // Weights uniform in +-sqrt(6 / (fan_in + fan_out)), zero biases.
  static ValueNetwork Initialize(std::size_t input_size,
                                 std::span<const std::size_t> hidden_sizes,
                                 std::size_t output_size, Rng& rng);

  std::size_t InputSize() const;
  std::size_t OutputSize() const;
  std::size_t ParameterCount() const;
  const std::vector<DenseLayer>& layers() const { return layers_; }
  std::vector<DenseLayer>& layers() { return layers_; }

  Eigen::VectorXd Forward(std::span<const double> x) const;
  // Column-per-sample: inputs is InputSize() x batch.
  Eigen::MatrixXd ForwardBatch(const Eigen::MatrixXd& inputs) const;

  bool AllFinite() const;

  bool operator==(const ValueNetwork& o) const { return layers_ == o.layers_; }

 private:
  std::vector<DenseLayer> layers_;
};

// A regression batch on the chosen action's Q-value.
struct QBatch {
  Eigen::MatrixXd inputs;            // InputSize() x B
  std::vector<std::size_t> actions;  // B
  Eigen::VectorXd targets;           // B
};

struct Gradients {
  std::vector<DenseLayer> layers;  // same shapes as the network
  double loss = 0.0;
};

// mean_b (Q(s_b, a_b) - y_b)^2
double SquaredTdLoss(const ValueNetwork& net, const QBatch& batch);

// Exact backpropagation of SquaredTdLoss. Throws NumericFault on NaN input.
Gradients ComputeGradients(const ValueNetwork& net, const QBatch& batch);

// Rescales the gradients so their global L2 norm does not exceed max_norm.
void ClipGradients(Gradients& grads, double max_norm);

void ApplySgd(ValueNetwork& net, const Gradients& grads, double learning_rate);

}  // namespace fogdeploy
