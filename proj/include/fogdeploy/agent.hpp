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

#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "fogdeploy/env.hpp"
#include "fogdeploy/network.hpp"
#include "fogdeploy/rng.hpp"

namespace fogdeploy {

struct AgentConfig {
  double learning_rate = 1e-3;
  double discount = 0.95;
  double epsilon_start = 1.0;
  double epsilon_end = 0.05;
  double epsilon_decay = 0.995;  // multiplicative, per episode
  std::size_t batch_size = 64;
  std::size_t replay_capacity = 10000;
  std::size_t target_sync_interval = 200;  // environment steps
  std::size_t episodes = 1000;
  std::vector<std::size_t> hidden_sizes = {64, 64};
  std::uint64_t seed = 7;
  std::size_t warmup = 0;        // transitions before updates start; 0 = batch_size
  std::size_t update_every = 1;  // environment steps per gradient update
  double max_grad_norm = 0.0;    // 0 disables clipping
  // Share of each batch drawn from a second buffer that only holds states
  // with both actions feasible. 0 samples the main buffer alone.
  double decision_replay_fraction = 0.0;
};

// Throws ConfigError when a field is out of range.
void CheckAgentConfig(const AgentConfig& cfg);

// Encodings are stored in single precision; every entry lies in [0, 1].
struct Transition {
  std::vector<float> state;
  Action action = Action::kAssignCloud;
  double reward = 0.0;  // negated step cost
  std::vector<float> next_state;
  ActionMask next_mask{};
  bool done = false;
};

// Fixed-capacity FIFO experience store.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity);

  void Push(Transition t);
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  // Oldest first.
  const Transition& operator[](std::size_t i) const { return entries_.at(i); }
  // Uniform with replacement.
  std::vector<const Transition*> Sample(std::size_t n, Rng& rng) const;

 private:
  std::size_t capacity_;
  std::deque<Transition> entries_;
};

// Epsilon-greedy over the feasible actions; greedy ties go to the cloud.
// Throws StateError when no action is feasible.
Action SelectAction(const ValueNetwork& net, std::span<const double> state,
                    const ActionMask& mask, double epsilon, Rng& rng);

struct TrainingLogEntry {
  std::size_t episode = 0;
  double total_cost = 0.0;
  double epsilon = 0.0;
  double loss = 0.0;  // mean over the episode's updates, 0 when none ran
};

struct TrainingResult {
  ValueNetwork network;
  std::vector<TrainingLogEntry> log;
};

// Supplies the bucket for a given training episode.
using BucketSource = std::function<std::shared_ptr<const SsrBucket>(std::size_t episode)>;

// Deep Q-learning on negated step costs. The run is a pure function of the
// agent seed and whatever the bucket source draws from. Throws NumericFault
// carrying the episode index when parameters stop being finite.
TrainingResult Train(const BucketSource& source, const EnvOptions& options,
                     const AgentConfig& cfg);

ValueNetwork InitialNetwork(const EnvOptions& options, const AgentConfig& cfg);

Policy GreedyPolicy(const ValueNetwork& net);

// Greedy rollouts, one record per bucket, in input order.
std::vector<EpisodeRecord> Evaluate(const ValueNetwork& net,
                                    std::span<const std::shared_ptr<const SsrBucket>> buckets,
                                    const EnvOptions& options);

}  // namespace fogdeploy
