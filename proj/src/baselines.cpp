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

#include "fogdeploy/baselines.hpp"

#include <cstdint>
#include <string>
#include <vector>

#include "fogdeploy/cost_model.hpp"
#include "fogdeploy/errors.hpp"

namespace fogdeploy {

Placement FogFirst(const SsrBucket& bucket) {
  Placement p(bucket);
  for (FunctionId id : bucket.FunctionIds()) {
    p[id] = FitsPlatform(bucket.Function(id), bucket.fog) ? FunctionState::Fog()
                                                          : FunctionState::Cloud();
  }
  return p;
}

Placement CloudOnly(const SsrBucket& bucket) {
  Placement p(bucket);
  for (FunctionId id : bucket.FunctionIds()) p[id] = FunctionState::Cloud();
  return p;
}

Placement RandomFeasible(const SsrBucket& bucket, Rng& rng) {
  Placement p(bucket);
  for (FunctionId id : bucket.FunctionIds()) {
    const ServerlessFunction& fn = bucket.Function(id);
    const bool fog = FitsPlatform(fn, bucket.fog);
    const bool cloud = FitsPlatform(fn, bucket.cloud);
    if (fog && cloud) {
      p[id] = rng.Bernoulli(0.5) ? FunctionState::Fog() : FunctionState::Cloud();
    } else {
      p[id] = fog ? FunctionState::Fog() : FunctionState::Cloud();
    }
  }
  return p;
}

Placement GreedyCost(const SsrBucket& bucket) {
  Placement p(bucket);
  for (FunctionId id : bucket.FunctionIds()) {
    p[id] = FunctionState::Cloud();
    if (FitsPlatform(bucket.Function(id), bucket.fog)) {
      const double fog = FunctionStepCost(bucket, id, FunctionState::Fog());
      const double cloud = FunctionStepCost(bucket, id, FunctionState::Cloud());
      if (fog < cloud) p[id] = FunctionState::Fog();
    }
  }
  return p;
}

OracleResult BruteForceOptimum(const SsrBucket& bucket) {
  const std::vector<FunctionId> ids = bucket.FunctionIds();
  const std::size_t n = ids.size();
  if (n > kOracleMaxFunctions) {
    throw SizeError("brute-force oracle supports at most " +
                    std::to_string(kOracleMaxFunctions) + " functions, bucket has " +
                    std::to_string(n));
  }
  std::vector<bool> fog_ok(n);
  std::vector<bool> cloud_ok(n);
  for (std::size_t k = 0; k < n; ++k) {
    fog_ok[k] = FitsPlatform(bucket.Function(ids[k]), bucket.fog);
    cloud_ok[k] = FitsPlatform(bucket.Function(ids[k]), bucket.cloud);
  }

  OracleResult result;
  bool have = false;
  Placement p(bucket);
  // Bit (n-1-k) of code set means function k goes to the cloud, so counting
  // up walks the action strings in lexicographic order with fog < cloud.
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t code = 0; code < count; ++code) {
    bool feasible = true;
    for (std::size_t k = 0; k < n && feasible; ++k) {
      const bool cloud = (code >> (n - 1 - k)) & 1U;
      feasible = cloud ? cloud_ok[k] : fog_ok[k];
      p[ids[k]] = cloud ? FunctionState::Cloud() : FunctionState::Fog();
    }
    if (!feasible) continue;
    ++result.feasible_placements;
    const double step = TotalStepCost(bucket, p);
    const double objective = EvaluateObjective(bucket, p).sum;
    if (!have || step < result.min_total_step_cost) {
      result.min_total_step_cost = step;
      result.best_step_cost_placement = p;
    }
    if (!have || objective < result.min_objective_sum) {
      result.min_objective_sum = objective;
      result.best_objective_placement = p;
    }
    have = true;
  }
  if (!have) throw ConstraintViolation("bucket admits no feasible placement");
  return result;
}

}  // namespace fogdeploy
