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

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fogdeploy/cost_model.hpp"
#include "fogdeploy/domain.hpp"

namespace fogdeploy {

// Placement as a sequential decision process: one decision per function,
// SSR-major and function-minor. The cumulative cost of an episode is the
// sum of the per-SSR step costs and the bucket mean is recovered at the end.

enum class Action { kAssignFog = 0, kAssignCloud = 1 };
inline constexpr std::size_t kActionCount = 2;
using ActionMask = std::array<bool, kActionCount>;

const char* ToString(Action action);
FunctionState ToFunctionState(Action action);

enum class ProcessingOrder {
  kPriority,   // SSRs by descending user priority, functions by descending priority
  kInsertion,  // bucket order
};

struct EnvOptions {
  std::size_t max_functions = 100;  // encoding slots
  ProcessingOrder order = ProcessingOrder::kPriority;
};

// Encoding layout: max_functions slots of kSlotFeatures in bucket order,
// scaled by 1 / max_functions, the cursor scalar, then a block describing
// the function under the cursor.
inline constexpr std::size_t kSlotFeatures = 11;
inline constexpr std::size_t kCurrentFeatures = 13;
inline constexpr std::size_t EncodingLength(std::size_t max_functions) {
  return max_functions * kSlotFeatures + 1 + kCurrentFeatures;
}

std::vector<FunctionId> ProcessingSequence(const SsrBucket& bucket, ProcessingOrder order);

struct EnvState {
  std::shared_ptr<const SsrBucket> bucket;
  std::shared_ptr<const std::vector<FunctionId>> order;
  Placement placement;
  std::size_t cursor = 0;
  std::size_t max_functions = 0;

  bool Done() const { return cursor >= order->size(); }
  FunctionId Current() const;
};

struct EpisodeSummary {
  double total_step_cost = 0.0;   // sum over SSRs
  double bucket_step_cost = 0.0;  // mean over SSRs
  BucketObjective objective;
};

struct StepOutcome {
  EnvState next_state;
  double cost = 0.0;
  bool done = false;
  ActionMask mask{};  // for the next function; all false when done
  std::optional<EpisodeSummary> summary;  // set when done
};

// Throws ConfigError for an invalid bucket and ShapeError when the bucket
// has more functions than the encoding has slots.
EnvState Reset(std::shared_ptr<const SsrBucket> bucket, const EnvOptions& options);

ActionMask FeasibleActions(const EnvState& state);

// Throws ConstraintViolation for a masked action and StateError when done.
StepOutcome Step(const EnvState& state, Action action);

std::vector<double> Encode(const EnvState& state);
void EncodeInto(const EnvState& state, std::span<double> out);

struct EpisodeRecord {
  std::string bucket_id;
  std::vector<FunctionId> sequence;
  std::vector<Action> actions;
  std::vector<double> step_costs;
  Placement placement;
  EpisodeSummary summary;
};

using Policy = std::function<Action(const EnvState&, const ActionMask&)>;

EpisodeRecord RunEpisode(std::shared_ptr<const SsrBucket> bucket,
                         const EnvOptions& options, const Policy& policy,
                         std::string bucket_id = "");

// Rolls out a recorded action sequence.
EpisodeRecord ReplayEpisode(std::shared_ptr<const SsrBucket> bucket,
                            const EnvOptions& options,
                            std::span<const Action> actions,
                            std::string bucket_id = "");

// Convenience: the placement a policy produces, without the record.
Placement PlacementFromSequence(const SsrBucket& bucket,
                                std::span<const FunctionId> sequence,
                                std::span<const Action> actions);

}  // namespace fogdeploy
