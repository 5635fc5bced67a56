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

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "fogdeploy/errors.hpp"
#include "fogdeploy/network.hpp"
#include "fogdeploy/rng.hpp"

namespace fogdeploy {
namespace {

ValueNetwork RandomNet(std::size_t in, std::vector<std::size_t> hidden, std::size_t out,
                       std::uint64_t seed) {
  Rng rng(seed);
  ValueNetwork net = ValueNetwork::Initialize(in, hidden, out, rng);
  // Non-zero biases so the finite differences exercise every parameter.
  for (DenseLayer& l : net.layers()) {
    for (Eigen::Index i = 0; i < l.bias.size(); ++i) l.bias(i) = rng.Uniform(-0.3, 0.3);
  }
  return net;
}

QBatch RandomBatch(const ValueNetwork& net, std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  QBatch b;
  b.inputs = Eigen::MatrixXd(net.InputSize(), n);
  for (Eigen::Index c = 0; c < b.inputs.cols(); ++c) {
    for (Eigen::Index r = 0; r < b.inputs.rows(); ++r) b.inputs(r, c) = rng.Uniform(-1, 1);
  }
  b.targets = Eigen::VectorXd(n);
  for (std::size_t i = 0; i < n; ++i) {
    b.actions.push_back(static_cast<std::size_t>(rng.UniformInt(0, net.OutputSize() - 1)));
    b.targets(i) = rng.Uniform(-2, 2);
  }
  return b;
}

TEST(ValueNetworkTest, ZeroNetworkOutputsZero) {
  ValueNetwork net({DenseLayer{Eigen::MatrixXd::Zero(3, 5), Eigen::VectorXd::Zero(3)},
                    DenseLayer{Eigen::MatrixXd::Zero(2, 3), Eigen::VectorXd::Zero(2)}});
  const std::vector<double> x{0.1, 0.2, 0.3, 0.4, 0.5};
  const Eigen::VectorXd q = net.Forward(x);
  ASSERT_EQ(q.size(), 2);
  EXPECT_EQ(q(0), 0.0);
  EXPECT_EQ(q(1), 0.0);
}

TEST(ValueNetworkTest, ToyNetwork) {
  Eigen::MatrixXd w(1, 1);
  w << 2.0;
  Eigen::VectorXd b(1);
  b << 1.0;
  ValueNetwork net({DenseLayer{w, b}});
  EXPECT_DOUBLE_EQ(net.Forward(std::vector<double>{3.0})(0), 7.0);
}

TEST(ValueNetworkTest, HiddenLayerRectifies) {
  Eigen::MatrixXd w1(1, 1), w2(1, 1);
  w1 << -1.0;
  w2 << 5.0;
  Eigen::VectorXd b1 = Eigen::VectorXd::Zero(1), b2(1);
  b2 << 0.5;
  ValueNetwork net({DenseLayer{w1, b1}, DenseLayer{w2, b2}});
  EXPECT_DOUBLE_EQ(net.Forward(std::vector<double>{2.0})(0), 0.5);
  EXPECT_DOUBLE_EQ(net.Forward(std::vector<double>{-2.0})(0), 10.5);
}

TEST(ValueNetworkTest, ShapesAndErrors) {
  Rng rng(1);
  const std::vector<std::size_t> hidden{8, 4};
  ValueNetwork net = ValueNetwork::Initialize(6, hidden, 2, rng);
  EXPECT_EQ(net.InputSize(), 6u);
  EXPECT_EQ(net.OutputSize(), 2u);
  EXPECT_EQ(net.ParameterCount(), 6u * 8 + 8 + 8 * 4 + 4 + 4 * 2 + 2);
  EXPECT_THROW(net.Forward(std::vector<double>(5)), ShapeError);
  EXPECT_THROW(ValueNetwork(std::vector<DenseLayer>{}), ShapeError);
  EXPECT_THROW(ValueNetwork({DenseLayer{Eigen::MatrixXd::Zero(3, 5), Eigen::VectorXd::Zero(3)},
                             DenseLayer{Eigen::MatrixXd::Zero(2, 4), Eigen::VectorXd::Zero(2)}}),
               ShapeError);
  for (const DenseLayer& l : net.layers()) {
    const double bound = std::sqrt(6.0 / static_cast<double>(l.weights.rows() + l.weights.cols()));
    EXPECT_LE(l.weights.cwiseAbs().maxCoeff(), bound);
    EXPECT_EQ(l.bias.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(ValueNetworkTest, InitializationIsDeterministic) {
  Rng a(9), b(9);
  const std::vector<std::size_t> hidden{16};
  EXPECT_EQ(ValueNetwork::Initialize(10, hidden, 2, a), ValueNetwork::Initialize(10, hidden, 2, b));
}

TEST(ValueNetworkTest, BatchMatchesSingleForward) {
  const ValueNetwork net = RandomNet(7, {9, 5}, 2, 3);
  const QBatch batch = RandomBatch(net, 6, 4);
  const Eigen::MatrixXd q = net.ForwardBatch(batch.inputs);
  for (Eigen::Index c = 0; c < batch.inputs.cols(); ++c) {
    const Eigen::VectorXd col = batch.inputs.col(c);
    const Eigen::VectorXd single = net.Forward(std::span<const double>(col.data(), col.size()));
    EXPECT_NEAR((q.col(c) - single).cwiseAbs().maxCoeff(), 0.0, 1e-12);
  }
}

// Central differences over every parameter.
void CheckGradients(std::size_t in, std::vector<std::size_t> hidden, std::size_t out,
                    std::size_t batch_size, std::uint64_t seed) {
  ValueNetwork net = RandomNet(in, hidden, out, seed);
  const QBatch batch = RandomBatch(net, batch_size, seed + 100);
  const Gradients g = ComputeGradients(net, batch);
  EXPECT_NEAR(g.loss, SquaredTdLoss(net, batch), 1e-12);
  const double h = 1e-5;
  double worst = 0.0;
  for (std::size_t l = 0; l < net.layers().size(); ++l) {
    auto probe = [&](double& param, double analytic) {
      const double saved = param;
      param = saved + h;
      const double up = SquaredTdLoss(net, batch);
      param = saved - h;
      const double down = SquaredTdLoss(net, batch);
      param = saved;
      const double numeric = (up - down) / (2 * h);
      const double denom = std::max({std::abs(numeric), std::abs(analytic), 1e-6});
      worst = std::max(worst, std::abs(numeric - analytic) / denom);
    };
    DenseLayer& layer = net.layers()[l];
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        probe(layer.weights(r, c), g.layers[l].weights(r, c));
      }
      probe(layer.bias(r), g.layers[l].bias(r));
    }
  }
  EXPECT_LT(worst, 1e-4);
}

TEST(GradientTest, FiniteDifferencesLinear) { CheckGradients(4, {}, 2, 5, 10); }
TEST(GradientTest, FiniteDifferencesOneHidden) { CheckGradients(6, {7}, 2, 8, 11); }
TEST(GradientTest, FiniteDifferencesTwoHidden) { CheckGradients(5, {8, 6}, 2, 4, 12); }
TEST(GradientTest, FiniteDifferencesSingleSample) { CheckGradients(3, {4, 4, 3}, 2, 1, 13); }

TEST(GradientTest, ZeroAtExactFit) {
  ValueNetwork net = RandomNet(4, {6}, 2, 20);
  QBatch batch = RandomBatch(net, 5, 21);
  const Eigen::MatrixXd q = net.ForwardBatch(batch.inputs);
  for (Eigen::Index b = 0; b < q.cols(); ++b) {
    batch.targets(b) = q(static_cast<Eigen::Index>(batch.actions[b]), b);
  }
  const Gradients g = ComputeGradients(net, batch);
  EXPECT_EQ(g.loss, 0.0);
  for (const DenseLayer& l : g.layers) {
    EXPECT_EQ(l.weights.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(l.bias.cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(GradientTest, DuplicatedBatchGivesSameGradient) {
  const ValueNetwork net = RandomNet(5, {7}, 2, 30);
  const QBatch batch = RandomBatch(net, 4, 31);
  QBatch twice;
  twice.inputs = Eigen::MatrixXd(batch.inputs.rows(), 8);
  twice.inputs << batch.inputs, batch.inputs;
  twice.targets = Eigen::VectorXd(8);
  twice.targets << batch.targets, batch.targets;
  twice.actions = batch.actions;
  twice.actions.insert(twice.actions.end(), batch.actions.begin(), batch.actions.end());
  const Gradients a = ComputeGradients(net, batch);
  const Gradients b = ComputeGradients(net, twice);
  EXPECT_NEAR(a.loss, b.loss, 1e-12);
  for (std::size_t l = 0; l < a.layers.size(); ++l) {
    EXPECT_LT((a.layers[l].weights - b.layers[l].weights).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((a.layers[l].bias - b.layers[l].bias).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(GradientTest, SgdStepReducesLoss) {
  ValueNetwork net = RandomNet(5, {8}, 2, 40);
  const QBatch batch = RandomBatch(net, 16, 41);
  const double before = SquaredTdLoss(net, batch);
  ApplySgd(net, ComputeGradients(net, batch), 1e-3);
  EXPECT_LT(SquaredTdLoss(net, batch), before);
}

TEST(GradientTest, ClippingBoundsTheNorm) {
  const ValueNetwork net = RandomNet(5, {8}, 2, 50);
  Gradients g = ComputeGradients(net, RandomBatch(net, 16, 51));
  Gradients unclipped = g;
  ClipGradients(unclipped, 0.0);
  EXPECT_EQ(unclipped.layers[0].weights, g.layers[0].weights);
  ClipGradients(g, 1e-3);
  double sq = 0;
  for (const DenseLayer& l : g.layers) sq += l.weights.squaredNorm() + l.bias.squaredNorm();
  EXPECT_NEAR(std::sqrt(sq), 1e-3, 1e-12);
}

TEST(GradientTest, MalformedBatches) {
  const ValueNetwork net = RandomNet(3, {4}, 2, 60);
  QBatch b = RandomBatch(net, 3, 61);
  QBatch bad_action = b;
  bad_action.actions[0] = 2;
  EXPECT_THROW(ComputeGradients(net, bad_action), ShapeError);
  QBatch bad_target = b;
  bad_target.targets(1) = std::nan("");
  EXPECT_THROW(ComputeGradients(net, bad_target), NumericFault);
  QBatch empty;
  empty.inputs = Eigen::MatrixXd(3, 0);
  EXPECT_THROW(SquaredTdLoss(net, empty), ShapeError);
}

}  // namespace
}  // namespace fogdeploy
