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

#include "fogdeploy/network.hpp"

#include <cmath>
#include <string>

#include "fogdeploy/errors.hpp"

namespace fogdeploy {

namespace {

void CheckBatch(const ValueNetwork& net, const QBatch& batch) {
  const auto b = static_cast<std::size_t>(batch.inputs.cols());
  if (b == 0) throw ShapeError("empty batch");
  if (static_cast<std::size_t>(batch.inputs.rows()) != net.InputSize()) {
    throw ShapeError("batch input size does not match the network");
  }
  if (batch.actions.size() != b || static_cast<std::size_t>(batch.targets.size()) != b) {
    throw ShapeError("batch actions/targets size mismatch");
  }
  for (std::size_t a : batch.actions) {
    if (a >= net.OutputSize()) throw ShapeError("action index out of range");
  }
  if (!batch.inputs.allFinite() || !batch.targets.allFinite()) {
    throw NumericFault("non-finite value in training batch");
  }
}

}  // namespace

ValueNetwork::ValueNetwork(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) throw ShapeError("network needs at least one layer");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const DenseLayer& layer = layers_[l];
    if (layer.weights.rows() == 0 || layer.weights.cols() == 0 ||
        layer.bias.size() != layer.weights.rows()) {
      throw ShapeError("layer " + std::to_string(l) + " has inconsistent shapes");
    }
    if (l > 0 && layer.weights.cols() != layers_[l - 1].weights.rows()) {
      throw ShapeError("layer " + std::to_string(l) + " does not chain");
    }
  }
}

ValueNetwork ValueNetwork::Initialize(std::size_t input_size,
                                      std::span<const std::size_t> hidden_sizes,
                                      std::size_t output_size, Rng& rng) {
  std::vector<std::size_t> sizes{input_size};
  sizes.insert(sizes.end(), hidden_sizes.begin(), hidden_sizes.end());
  sizes.push_back(output_size);
  std::vector<DenseLayer> layers;
  for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(sizes[l]);
    const auto out = static_cast<Eigen::Index>(sizes[l + 1]);
    const double bound = std::sqrt(6.0 / static_cast<double>(in + out));
    DenseLayer layer{Eigen::MatrixXd(out, in), Eigen::VectorXd::Zero(out)};
    // Row-major fill order keeps the stream layout independent of Eigen storage.
    for (Eigen::Index r = 0; r < out; ++r) {
      for (Eigen::Index c = 0; c < in; ++c) layer.weights(r, c) = rng.Uniform(-bound, bound);
    }
    layers.push_back(std::move(layer));
  }
  return ValueNetwork(std::move(layers));
}

std::size_t ValueNetwork::InputSize() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weights.cols());
}

std::size_t ValueNetwork::OutputSize() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().weights.rows());
}

std::size_t ValueNetwork::ParameterCount() const {
  std::size_t n = 0;
  for (const DenseLayer& l : layers_) n += l.weights.size() + l.bias.size();
  return n;
}

Eigen::VectorXd ValueNetwork::Forward(std::span<const double> x) const {
  if (x.size() != InputSize()) {
    throw ShapeError("input length " + std::to_string(x.size()) + " != network input " +
                     std::to_string(InputSize()));
  }
  Eigen::VectorXd a = Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::VectorXd z = layers_[l].weights * a + layers_[l].bias;
    a = l + 1 < layers_.size() ? Eigen::VectorXd(z.cwiseMax(0.0)) : z;
  }
  return a;
}

Eigen::MatrixXd ValueNetwork::ForwardBatch(const Eigen::MatrixXd& inputs) const {
  if (static_cast<std::size_t>(inputs.rows()) != InputSize()) {
    throw ShapeError("batch input size does not match the network");
  }
  Eigen::MatrixXd a = inputs;
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    Eigen::MatrixXd z = layers_[l].weights * a;
    z.colwise() += layers_[l].bias;
    a = l + 1 < layers_.size() ? Eigen::MatrixXd(z.cwiseMax(0.0)) : z;
  }
  return a;
}

bool ValueNetwork::AllFinite() const {
  for (const DenseLayer& l : layers_) {
    if (!l.weights.allFinite() || !l.bias.allFinite()) return false;
  }
  return true;
}

double SquaredTdLoss(const ValueNetwork& net, const QBatch& batch) {
  CheckBatch(net, batch);
  const Eigen::MatrixXd q = net.ForwardBatch(batch.inputs);
  double sum = 0.0;
  for (Eigen::Index b = 0; b < q.cols(); ++b) {
    const double err = q(static_cast<Eigen::Index>(batch.actions[b]), b) - batch.targets(b);
    sum += err * err;
  }
  return sum / static_cast<double>(q.cols());
}

Gradients ComputeGradients(const ValueNetwork& net, const QBatch& batch) {
  CheckBatch(net, batch);
  const auto& layers = net.layers();
  const std::size_t depth = layers.size();
  const Eigen::Index n = batch.inputs.cols();

  // activations[0] = input, activations[l + 1] = output of layer l.
  std::vector<Eigen::MatrixXd> activations;
  activations.reserve(depth + 1);
  activations.push_back(batch.inputs);
  for (std::size_t l = 0; l < depth; ++l) {
    Eigen::MatrixXd z = layers[l].weights * activations.back();
    z.colwise() += layers[l].bias;
    activations.push_back(l + 1 < depth ? Eigen::MatrixXd(z.cwiseMax(0.0)) : std::move(z));
  }

  Gradients grads;
  grads.layers.resize(depth);
  const Eigen::MatrixXd& q = activations.back();
  Eigen::MatrixXd delta = Eigen::MatrixXd::Zero(q.rows(), n);
  double loss = 0.0;
  const double scale = 2.0 / static_cast<double>(n);
  for (Eigen::Index b = 0; b < n; ++b) {
    const auto a = static_cast<Eigen::Index>(batch.actions[b]);
    const double err = q(a, b) - batch.targets(b);
    loss += err * err;
    delta(a, b) = scale * err;
  }
  grads.loss = loss / static_cast<double>(n);

  for (std::size_t l = depth; l-- > 0;) {
    grads.layers[l].weights = delta * activations[l].transpose();
    grads.layers[l].bias = delta.rowwise().sum();
    if (l == 0) break;
    Eigen::MatrixXd upstream = layers[l].weights.transpose() * delta;
    // Rectifier derivative; activations[l] > 0 exactly where z > 0.
    delta = upstream.cwiseProduct(
        (activations[l].array() > 0.0).cast<double>().matrix());
  }
  return grads;
}

void ClipGradients(Gradients& grads, double max_norm) {
  if (!(max_norm > 0.0)) return;
  double sq = 0.0;
  for (const DenseLayer& l : grads.layers) {
    sq += l.weights.squaredNorm() + l.bias.squaredNorm();
  }
  const double norm = std::sqrt(sq);
  if (norm <= max_norm) return;
  const double s = max_norm / norm;
  for (DenseLayer& l : grads.layers) {
    l.weights *= s;
    l.bias *= s;
  }
}

void ApplySgd(ValueNetwork& net, const Gradients& grads, double learning_rate) {
  auto& layers = net.layers();
  if (grads.layers.size() != layers.size()) throw ShapeError("gradient depth mismatch");
  for (std::size_t l = 0; l < layers.size(); ++l) {
    layers[l].weights -= learning_rate * grads.layers[l].weights;
    layers[l].bias -= learning_rate * grads.layers[l].bias;
  }
}

}  // namespace fogdeploy
