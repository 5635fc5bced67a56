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

#include "fogdeploy/domain.hpp"
#include "fogdeploy/rng.hpp"

namespace fogdeploy {

// Reference placements. fog_first stands in for the fog-greedy comparison
// algorithms; it is not a re-implementation of any published method.
Placement FogFirst(const SsrBucket& bucket);
Placement CloudOnly(const SsrBucket& bucket);
Placement RandomFeasible(const SsrBucket& bucket, Rng& rng);
// Per function, the feasible action with the smaller step cost; ties go to
// the cloud.
Placement GreedyCost(const SsrBucket& bucket);

inline constexpr std::size_t kOracleMaxFunctions = 14;

struct OracleResult {
  Placement best_step_cost_placement;
  double min_total_step_cost = 0.0;  // sum over SSRs of the SSR step cost
  Placement best_objective_placement;
  double min_objective_sum = 0.0;  // sum of z_i
  std::size_t feasible_placements = 0;
};

// Exhaustive search over all feasible placements. Candidates are visited in
// lexicographic order of the bucket-order action string (fog < cloud) and
// only a strictly smaller value replaces the incumbent. Throws SizeError
// above kOracleMaxFunctions functions.
OracleResult BruteForceOptimum(const SsrBucket& bucket);

}  // namespace fogdeploy
