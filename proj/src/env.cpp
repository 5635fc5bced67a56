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

#include "fogdeploy/env.hpp"

#include <algorithm>
#include <numeric>

#include "fogdeploy/errors.hpp"

namespace fogdeploy {

namespace {

double Clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

std::string ViolationText(const std::vector<std::string>& violations) {
  std::string out = "invalid bucket:";
  for (const std::string& v : violations) out += " " + v + ";";
  return out;
}

// Shared per-function features: code, input, critical, four demand ratios,
// user priority and fog feasibility. Writes 9 entries.
void WriteFunctionFeatures(const SsrBucket& bucket, FunctionId id, double* out) {
  const ServerlessFunction& fn = bucket.Function(id);
  const ResourceVector demand = fn.TotalDemand();
  const ResourceVector& cap = bucket.cloud.per_function_cap;
  out[0] = Clamp01(fn.code_size / bucket.cloud.code_size_limit);
  out[1] = Clamp01(fn.input_size / bucket.cloud.input_size_limit);
  out[2] = fn.critical_value / 5.0;
  for (ResourceKind kind : kResourceKinds) {
    out[3 + static_cast<int>(kind)] = Clamp01(demand[kind] / cap[kind]);
  }
  out[7] = bucket.UserOf(id.ssr).priority;
  out[8] = FitsPlatform(fn, bucket.fog) ? 1.0 : 0.0;
}

}  // namespace

const char* ToString(Action action) {
  return action == Action::kAssignFog ? "fog" : "cloud";
}

FunctionState ToFunctionState(Action action) {
  return action == Action::kAssignFog ? FunctionState::Fog() : FunctionState::Cloud();
}

std::vector<FunctionId> ProcessingSequence(const SsrBucket& bucket, ProcessingOrder order) {
  if (order == ProcessingOrder::kInsertion) return bucket.FunctionIds();

  std::vector<std::size_t> ssr_order(bucket.ssrs.size());
  std::iota(ssr_order.begin(), ssr_order.end(), 0);
  std::stable_sort(ssr_order.begin(), ssr_order.end(), [&](std::size_t a, std::size_t b) {
    return bucket.UserOf(a).priority > bucket.UserOf(b).priority;
  });
  std::vector<FunctionId> seq;
  seq.reserve(bucket.FunctionCount());
  for (std::size_t i : ssr_order) {
    const auto& fns = bucket.ssrs[i].functions;
    std::vector<std::size_t> fn_order(fns.size());
    std::iota(fn_order.begin(), fn_order.end(), 0);
    std::stable_sort(fn_order.begin(), fn_order.end(), [&](std::size_t a, std::size_t b) {
      return fns[a].priority > fns[b].priority;
    });
    for (std::size_t j : fn_order) seq.push_back({i, j});
  }
  return seq;
}

FunctionId EnvState::Current() const {
  if (Done()) throw StateError("episode is finished");
  return (*order)[cursor];
}

EnvState Reset(std::shared_ptr<const SsrBucket> bucket, const EnvOptions& options) {
  if (!bucket) throw ConfigError("null bucket");
  const auto violations = ValidateBucket(*bucket);
  if (!violations.empty()) throw ConfigError(ViolationText(violations));
  if (bucket->FunctionCount() > options.max_functions) {
    throw ShapeError("bucket has " + std::to_string(bucket->FunctionCount()) +
                     " functions, encoding holds " + std::to_string(options.max_functions));
  }
  EnvState state;
  state.order = std::make_shared<const std::vector<FunctionId>>(
      ProcessingSequence(*bucket, options.order));
  state.placement = Placement(*bucket);
  state.max_functions = options.max_functions;
  state.bucket = std::move(bucket);
  return state;
}

ActionMask FeasibleActions(const EnvState& state) {
  const ServerlessFunction& fn = state.bucket->Function(state.Current());
  return {FitsPlatform(fn, state.bucket->fog), FitsPlatform(fn, state.bucket->cloud)};
}

StepOutcome Step(const EnvState& state, Action action) {
  const FunctionId id = state.Current();
  const ActionMask mask = FeasibleActions(state);
  if (!mask[static_cast<std::size_t>(action)]) {
    throw ConstraintViolation(std::string("action ") + ToString(action) +
                              " violates the platform limits of function (" +
                              std::to_string(id.ssr) + ", " + std::to_string(id.index) + ")");
  }
  StepOutcome out;
  out.next_state = state;
  out.next_state.placement[id] = ToFunctionState(action);
  out.next_state.cursor += 1;
  out.cost = FunctionStepCost(*state.bucket, id, ToFunctionState(action));
  out.done = out.next_state.Done();
  if (out.done) {
    const SsrBucket& b = *state.bucket;
    EpisodeSummary summary;
    summary.total_step_cost = TotalStepCost(b, out.next_state.placement);
    summary.bucket_step_cost = summary.total_step_cost / static_cast<double>(b.ssrs.size());
    summary.objective = EvaluateObjective(b, out.next_state.placement);
    out.summary = std::move(summary);
    out.mask = {false, false};
  } else {
    out.mask = FeasibleActions(out.next_state);
  }
  return out;
}

void EncodeInto(const EnvState& state, std::span<double> out) {
  if (out.size() != EncodingLength(state.max_functions)) {
    throw ShapeError("encoding buffer has the wrong length");
  }
  std::fill(out.begin(), out.end(), 0.0);
  const SsrBucket& bucket = *state.bucket;
  // Slots are averaged over the slot count so the block's norm does not
  // swamp the current-function features as max_functions grows.
  const double slot_scale = 1.0 / static_cast<double>(state.max_functions);
  std::size_t slot = 0;
  for (FunctionId id : bucket.FunctionIds()) {
    double* p = out.data() + slot * kSlotFeatures;
    const FunctionState s = state.placement[id];
    p[0] = s.on_fog ? 1.0 : 0.0;
    p[1] = s.on_cloud ? 1.0 : 0.0;
    WriteFunctionFeatures(bucket, id, p + 2);
    for (std::size_t k = 0; k < kSlotFeatures; ++k) p[k] *= slot_scale;
    ++slot;
  }
  const std::size_t total = state.order->size();
  double* tail = out.data() + state.max_functions * kSlotFeatures;
  tail[0] = total == 0 ? 1.0 : static_cast<double>(state.cursor) / static_cast<double>(total);
  if (!state.Done()) {
    const FunctionId id = state.Current();
    WriteFunctionFeatures(bucket, id, tail + 1);
    const double user_latency = NormalizedUserLatency(bucket, bucket.UserOf(id.ssr));
    const double link_latency = Clamp01(NormalizedLinkLatency(bucket));
    tail[10] = user_latency;
    tail[11] = link_latency;
    // Network I/O enters both step costs scaled by latency.
    tail[12] = tail[7] * user_latency;
    tail[13] = tail[7] * link_latency;
  }
}

std::vector<double> Encode(const EnvState& state) {
  std::vector<double> out(EncodingLength(state.max_functions));
  EncodeInto(state, out);
  return out;
}

EpisodeRecord RunEpisode(std::shared_ptr<const SsrBucket> bucket, const EnvOptions& options,
                         const Policy& policy, std::string bucket_id) {
  EpisodeRecord record;
  record.bucket_id = std::move(bucket_id);
  EnvState state = Reset(std::move(bucket), options);
  record.sequence = *state.order;
  while (!state.Done()) {
    const ActionMask mask = FeasibleActions(state);
    const Action action = policy(state, mask);
    StepOutcome outcome = Step(state, action);
    record.actions.push_back(action);
    record.step_costs.push_back(outcome.cost);
    if (outcome.summary) record.summary = *outcome.summary;
    state = std::move(outcome.next_state);
  }
  record.placement = state.placement;
  return record;
}

EpisodeRecord ReplayEpisode(std::shared_ptr<const SsrBucket> bucket, const EnvOptions& options,
                            std::span<const Action> actions, std::string bucket_id) {
  if (bucket && actions.size() != bucket->FunctionCount()) {
    throw ShapeError("action sequence length does not match the bucket");
  }
  std::size_t next = 0;
  return RunEpisode(
      std::move(bucket), options,
      [&](const EnvState&, const ActionMask&) { return actions[next++]; },
      std::move(bucket_id));
}

Placement PlacementFromSequence(const SsrBucket& bucket, std::span<const FunctionId> sequence,
                                std::span<const Action> actions) {
  if (sequence.size() != actions.size()) throw ShapeError("sequence/action size mismatch");
  Placement p(bucket);
  for (std::size_t k = 0; k < sequence.size(); ++k) p[sequence[k]] = ToFunctionState(actions[k]);
  return p;
}

}  // namespace fogdeploy
