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

#include <vector>

#include "fogdeploy/domain.hpp"

namespace fogdeploy {

// Communication and computation latency contributions of one SSR and their
// sum (the SSR objective z).
struct CostBreakdown {
  double comm = 0.0;
  double comp = 0.0;
  double total = 0.0;
};

struct BucketObjective {
  std::vector<CostBreakdown> per_ssr;  // z_1 .. z_n
  double sum = 0.0;                    // evaluation scalar: unweighted sum
};

// Cost formulas take latencies in normalized form: the user latency enters
// as its latency priority (l_i / max l) and the fog-cloud link latency as
// l^f / max l. The bucket-level helpers below do the normalization.
double NormalizedUserLatency(const SsrBucket& bucket, const User& user);
double NormalizedLinkLatency(const SsrBucket& bucket);

// R^f if the function sits on fog, R^c if on cloud.
ResourceVector PerFunctionCap(FunctionState state, const EnvironmentLimits& fog,
                              const EnvironmentLimits& cloud);

ResourceVector TotalDemand(const ServerlessFunction& fn);
ResourceVector SsrBaseDemand(const Ssr& ssr);
ResourceVector SsrSupplementaryDemand(const Ssr& ssr);

// P_i + c * l^f.
double CommLatency(FunctionState state, double user_priority, double link_latency);

double SsrCommLatency(const Ssr& ssr, const std::vector<FunctionState>& states,
                      double user_priority, double link_latency);

// Ratio-weighted computation latency of one function against the cap of the
// platform it is placed on; the network term is scaled by l_i on fog and by
// l^f on cloud.
double CompLatency(const ResourceVector& demand, FunctionState state,
                   const EnvironmentLimits& fog, const EnvironmentLimits& cloud,
                   const ImportanceFactors& weights, double user_latency,
                   double link_latency);

// Priority-weighted sum: sum_j comp_j * priority_j / max_j priority_j.
double SsrCompLatency(const std::vector<double>& comp,
                      const std::vector<double>& priorities);

CostBreakdown SsrObjective(const SsrBucket& bucket, std::size_t ssr_index,
                           const Placement& placement);
BucketObjective EvaluateObjective(const SsrBucket& bucket,
                                  const Placement& placement);

// Per-function step costs of the two actions.
double StepCostFog(const ResourceVector& demand, const EnvironmentLimits& fog,
                   const ImportanceFactors& weights, double user_latency,
                   double user_priority);
double StepCostCloud(const ResourceVector& demand, const EnvironmentLimits& cloud,
                     const ImportanceFactors& weights, double user_latency,
                     double link_latency, double user_priority);

// Step cost of placing one function of the bucket with the given action
// state (must be assigned).
double FunctionStepCost(const SsrBucket& bucket, FunctionId id, FunctionState state);

double SsrStepCost(const SsrBucket& bucket, std::size_t ssr_index,
                   const Placement& placement);
// Mean of SsrStepCost over the SSRs.
double BucketStepCost(const SsrBucket& bucket, const Placement& placement);
// Sum of SsrStepCost over the SSRs (the episode's cumulative cost).
double TotalStepCost(const SsrBucket& bucket, const Placement& placement);

}  // namespace fogdeploy
