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

#include "fogdeploy/agent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fogdeploy/errors.hpp"

namespace fogdeploy {

namespace {

std::vector<float> ToFloat(const std::vector<double>& v) {
  return std::vector<float>(v.begin(), v.end());
}

void FillColumn(Eigen::MatrixXd& m, Eigen::Index col, const std::vector<float>& v) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, col) = v[static_cast<std::size_t>(r)];
}

}  // namespace

void CheckAgentConfig(const AgentConfig& cfg) {
  if (!(cfg.learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(cfg.discount >= 0.0 && cfg.discount <= 1.0)) {
    throw ConfigError("discount must lie in [0, 1]");
  }
  if (!(cfg.epsilon_end >= 0.0 && cfg.epsilon_end <= cfg.epsilon_start &&
        cfg.epsilon_start <= 1.0)) {
    throw ConfigError("epsilon must satisfy 0 <= end <= start <= 1");
  }
  if (!(cfg.epsilon_decay > 0.0 && cfg.epsilon_decay <= 1.0)) {
    throw ConfigError("epsilon decay must lie in (0, 1]");
  }
  if (cfg.batch_size == 0) throw ConfigError("batch size must be positive");
  if (cfg.replay_capacity == 0) throw ConfigError("replay capacity must be positive");
  if (cfg.target_sync_interval == 0) throw ConfigError("target sync interval must be positive");
  if (cfg.update_every == 0) throw ConfigError("update_every must be positive");
  for (std::size_t h : cfg.hidden_sizes) {
    if (h == 0) throw ConfigError("hidden layer sizes must be positive");
  }
  if (!(cfg.max_grad_norm >= 0.0)) throw ConfigError("max_grad_norm must be non-negative");
  if (!(cfg.decision_replay_fraction >= 0.0 && cfg.decision_replay_fraction <= 1.0)) {
    throw ConfigError("decision_replay_fraction must lie in [0, 1]");
  }
}

ReplayBuffer::ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw ConfigError("replay capacity must be positive");
}

void ReplayBuffer::Push(Transition t) {
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(std::move(t));
}

std::vector<const Transition*> ReplayBuffer::Sample(std::size_t n, Rng& rng) const {
  if (entries_.empty()) throw StateError("sampling from an empty replay buffer");
  std::vector<const Transition*> out;
  out.reserve(n);
  const auto last = static_cast<std::int64_t>(entries_.size()) - 1;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(&entries_[static_cast<std::size_t>(rng.UniformInt(0, last))]);
  }
  return out;
}

Action SelectAction(const ValueNetwork& net, std::span<const double> state,
                    const ActionMask& mask, double epsilon, Rng& rng) {
  const bool fog = mask[0];
  const bool cloud = mask[1];
  if (!fog && !cloud) throw StateError("no feasible action");
  if (fog != cloud) return fog ? Action::kAssignFog : Action::kAssignCloud;
  if (rng.Uniform() < epsilon) {
    return rng.Bernoulli(0.5) ? Action::kAssignFog : Action::kAssignCloud;
  }
  const Eigen::VectorXd q = net.Forward(state);
  return q(0) > q(1) ? Action::kAssignFog : Action::kAssignCloud;
}

ValueNetwork InitialNetwork(const EnvOptions& options, const AgentConfig& cfg) {
  Rng rng(DeriveSeed(cfg.seed, 0x1217));
  return ValueNetwork::Initialize(EncodingLength(options.max_functions), cfg.hidden_sizes,
                                  kActionCount, rng);
}

TrainingResult Train(const BucketSource& source, const EnvOptions& options,
                     const AgentConfig& cfg) {
  CheckAgentConfig(cfg);
  TrainingResult result;
  result.network = InitialNetwork(options, cfg);
  ValueNetwork target = result.network;
  ValueNetwork& online = result.network;

  Rng explore_rng(DeriveSeed(cfg.seed, 0xe9));
  Rng replay_rng(DeriveSeed(cfg.seed, 0x4e));
  ReplayBuffer replay(cfg.replay_capacity);
  ReplayBuffer decisions(cfg.replay_capacity);
  const auto decision_n = static_cast<std::size_t>(
      std::lround(cfg.decision_replay_fraction * static_cast<double>(cfg.batch_size)));
  const std::size_t warmup = cfg.warmup == 0 ? cfg.batch_size : cfg.warmup;
  const auto input = static_cast<Eigen::Index>(online.InputSize());
  const auto batch_n = static_cast<Eigen::Index>(cfg.batch_size);

  double epsilon = cfg.epsilon_start;
  std::size_t steps = 0;
  QBatch batch;
  batch.inputs.resize(input, batch_n);
  batch.actions.resize(cfg.batch_size);
  batch.targets.resize(batch_n);
  Eigen::MatrixXd next_inputs(input, batch_n);

  for (std::size_t episode = 0; episode < cfg.episodes; ++episode) {
    EnvState state = Reset(source(episode), options);
    std::vector<double> encoded = Encode(state);
    double episode_cost = 0.0;
    double loss_sum = 0.0;
    std::size_t updates = 0;

    while (!state.Done()) {
      const ActionMask mask = FeasibleActions(state);
      const Action action = SelectAction(online, encoded, mask, epsilon, explore_rng);
      StepOutcome outcome = Step(state, action);
      std::vector<double> next_encoded = Encode(outcome.next_state);
      episode_cost += outcome.cost;
      Transition t{ToFloat(encoded), action, -outcome.cost, ToFloat(next_encoded),
                   outcome.mask, outcome.done};
      if (decision_n > 0 && mask[0] && mask[1]) decisions.Push(t);
      replay.Push(std::move(t));
      state = std::move(outcome.next_state);
      encoded = std::move(next_encoded);
      ++steps;

      if (replay.size() >= warmup && steps % cfg.update_every == 0) {
        const std::size_t from_decisions = decisions.size() > 0 ? decision_n : 0;
        auto sample = replay.Sample(cfg.batch_size - from_decisions, replay_rng);
        if (from_decisions > 0) {
          const auto extra = decisions.Sample(from_decisions, replay_rng);
          sample.insert(sample.end(), extra.begin(), extra.end());
        }
        for (Eigen::Index b = 0; b < batch_n; ++b) {
          FillColumn(batch.inputs, b, sample[b]->state);
          FillColumn(next_inputs, b, sample[b]->next_state);
          batch.actions[b] = static_cast<std::size_t>(sample[b]->action);
        }
        const Eigen::MatrixXd next_q = target.ForwardBatch(next_inputs);
        for (Eigen::Index b = 0; b < batch_n; ++b) {
          const Transition& t = *sample[b];
          double continuation = 0.0;
          if (!t.done) {
            continuation = -INFINITY;
            for (std::size_t a = 0; a < kActionCount; ++a) {
              if (t.next_mask[a]) {
                continuation = std::max(continuation, next_q(static_cast<Eigen::Index>(a), b));
              }
            }
          }
          batch.targets(b) = t.reward + cfg.discount * continuation;
        }
        Gradients grads;
        try {
          grads = ComputeGradients(online, batch);
        } catch (const NumericFault& e) {
          throw NumericFault(std::string(e.what()) + " in episode " + std::to_string(episode),
                             static_cast<long>(episode));
        }
        ClipGradients(grads, cfg.max_grad_norm);
        ApplySgd(online, grads, cfg.learning_rate);
        loss_sum += grads.loss;
        ++updates;
      }
      if (steps % cfg.target_sync_interval == 0) target = online;
    }

    if (!online.AllFinite() || !std::isfinite(loss_sum)) {
      throw NumericFault("non-finite network parameters in episode " + std::to_string(episode),
                         static_cast<long>(episode));
    }
    result.log.push_back({episode, episode_cost, epsilon,
                          updates ? loss_sum / static_cast<double>(updates) : 0.0});
    epsilon = std::max(cfg.epsilon_end, epsilon * cfg.epsilon_decay);
  }
  return result;
}

Policy GreedyPolicy(const ValueNetwork& net) {
  return [&net](const EnvState& state, const ActionMask& mask) {
    Rng unused(0);
    return SelectAction(net, Encode(state), mask, 0.0, unused);
  };
}

std::vector<EpisodeRecord> Evaluate(const ValueNetwork& net,
                                    std::span<const std::shared_ptr<const SsrBucket>> buckets,
                                    const EnvOptions& options) {
  std::vector<EpisodeRecord> records;
  records.reserve(buckets.size());
  const Policy policy = GreedyPolicy(net);
  for (std::size_t i = 0; i < buckets.size(); ++i) {
    records.push_back(RunEpisode(buckets[i], options, policy, std::to_string(i)));
  }
  return records;
}

}  // namespace fogdeploy
