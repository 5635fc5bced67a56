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

#include "fogdeploy/cost_model.hpp"

#include <algorithm>

#include "fogdeploy/errors.hpp"

namespace fogdeploy {

namespace {

void RequireAssigned(FunctionState state) {
  if (!state.Assigned()) throw StateError("function is not assigned to exactly one platform");
}

double MaxUserLatency(const SsrBucket& bucket) {
  double m = 0.0;
  for (const User& u : bucket.users) m = std::max(m, u.latency);
  if (!(m > 0.0)) throw DomainError("bucket has no users with positive latency");
  return m;
}

// sum over CPU/RAM/Storage of ratio*weight, plus the network ratio*weight
// scaled by io_scale.
double RatioCost(const ResourceVector& demand, const ResourceVector& cap,
                 const ImportanceFactors& w, double io_scale) {
  const double compute = demand.cpu / cap.cpu * w[0] + demand.ram / cap.ram * w[1] +
                         demand.storage / cap.storage * w[2];
  return compute + demand.net_io / cap.net_io * w[3] * io_scale;
}

}  // namespace

double NormalizedUserLatency(const SsrBucket& bucket, const User& user) {
  return user.latency / MaxUserLatency(bucket);
}

double NormalizedLinkLatency(const SsrBucket& bucket) {
  return bucket.cloud.link_latency / MaxUserLatency(bucket);
}

ResourceVector PerFunctionCap(FunctionState state, const EnvironmentLimits& fog,
                              const EnvironmentLimits& cloud) {
  RequireAssigned(state);
  return state.on_fog ? fog.per_function_cap : cloud.per_function_cap;
}

ResourceVector TotalDemand(const ServerlessFunction& fn) { return fn.TotalDemand(); }

ResourceVector SsrBaseDemand(const Ssr& ssr) {
  if (ssr.functions.empty()) throw DomainError("empty SSR");
  ResourceVector sum;
  for (const ServerlessFunction& fn : ssr.functions) sum += fn.base_demand;
  return sum;
}

ResourceVector SsrSupplementaryDemand(const Ssr& ssr) {
  if (ssr.functions.empty()) throw DomainError("empty SSR");
  ResourceVector sum;
  for (const ServerlessFunction& fn : ssr.functions) sum += fn.supplementary_demand;
  return sum;
}

double CommLatency(FunctionState state, double user_priority, double link_latency) {
  RequireAssigned(state);
  return user_priority + (state.on_cloud ? link_latency : 0.0);
}

double SsrCommLatency(const Ssr& ssr, const std::vector<FunctionState>& states,
                      double user_priority, double link_latency) {
  if (states.size() != ssr.functions.size()) throw ShapeError("placement row size mismatch");
  double sum = 0.0;
  for (FunctionState s : states) sum += CommLatency(s, user_priority, link_latency);
  return sum;
}

double CompLatency(const ResourceVector& demand, FunctionState state,
                   const EnvironmentLimits& fog, const EnvironmentLimits& cloud,
                   const ImportanceFactors& weights, double user_latency,
                   double link_latency) {
  const ResourceVector cap = PerFunctionCap(state, fog, cloud);
  const double io_scale = state.on_fog ? user_latency : link_latency;
  return RatioCost(demand, cap, weights, io_scale);
}

double SsrCompLatency(const std::vector<double>& comp,
                      const std::vector<double>& priorities) {
  if (comp.size() != priorities.size()) throw ShapeError("latency/priority size mismatch");
  if (comp.empty()) return 0.0;
  const double max_priority = *std::max_element(priorities.begin(), priorities.end());
  if (!(max_priority > 0.0)) throw DomainError("function priorities must be positive");
  double sum = 0.0;
  for (std::size_t j = 0; j < comp.size(); ++j) {
    sum += comp[j] * (priorities[j] / max_priority);
  }
  return sum;
}

CostBreakdown SsrObjective(const SsrBucket& bucket, std::size_t ssr_index,
                           const Placement& placement) {
  const Ssr& ssr = bucket.ssrs.at(ssr_index);
  const User& user = bucket.UserOf(ssr);
  const double user_latency = NormalizedUserLatency(bucket, user);
  const double link_latency = NormalizedLinkLatency(bucket);
  const auto& row = placement.Row(ssr_index);

  CostBreakdown out;
  out.comm = SsrCommLatency(ssr, row, user.priority, link_latency);
  std::vector<double> comp;
  std::vector<double> priorities;
  comp.reserve(row.size());
  priorities.reserve(row.size());
  for (std::size_t j = 0; j < row.size(); ++j) {
    const ServerlessFunction& fn = ssr.functions[j];
    comp.push_back(CompLatency(fn.TotalDemand(), row[j], bucket.fog, bucket.cloud,
                               bucket.importance_factors, user_latency, link_latency));
    priorities.push_back(fn.priority);
  }
  out.comp = SsrCompLatency(comp, priorities);
  out.total = out.comm + out.comp;
  return out;
}

BucketObjective EvaluateObjective(const SsrBucket& bucket, const Placement& placement) {
  if (!placement.ShapedLike(bucket)) throw ShapeError("placement shape does not match bucket");
  BucketObjective out;
  out.per_ssr.reserve(bucket.ssrs.size());
  for (std::size_t i = 0; i < bucket.ssrs.size(); ++i) {
    out.per_ssr.push_back(SsrObjective(bucket, i, placement));
    out.sum += out.per_ssr.back().total;
  }
  return out;
}

double StepCostFog(const ResourceVector& demand, const EnvironmentLimits& fog,
                   const ImportanceFactors& weights, double user_latency,
                   double user_priority) {
  return RatioCost(demand, fog.per_function_cap, weights, user_latency) + user_priority;
}

double StepCostCloud(const ResourceVector& demand, const EnvironmentLimits& cloud,
                     const ImportanceFactors& weights, double user_latency,
                     double link_latency, double user_priority) {
  return RatioCost(demand, cloud.per_function_cap, weights, user_latency + link_latency) +
         user_priority + link_latency;
}

double FunctionStepCost(const SsrBucket& bucket, FunctionId id, FunctionState state) {
  RequireAssigned(state);
  const ServerlessFunction& fn = bucket.Function(id);
  const User& user = bucket.UserOf(id.ssr);
  const double user_latency = NormalizedUserLatency(bucket, user);
  if (state.on_fog) {
    return StepCostFog(fn.TotalDemand(), bucket.fog, bucket.importance_factors,
                       user_latency, user.priority);
  }
  return StepCostCloud(fn.TotalDemand(), bucket.cloud, bucket.importance_factors,
                       user_latency, NormalizedLinkLatency(bucket), user.priority);
}

double SsrStepCost(const SsrBucket& bucket, std::size_t ssr_index,
                   const Placement& placement) {
  const auto& row = placement.Row(ssr_index);
  if (row.size() != bucket.ssrs.at(ssr_index).functions.size()) {
    throw ShapeError("placement row size mismatch");
  }
  double sum = 0.0;
  for (std::size_t j = 0; j < row.size(); ++j) {
    sum += FunctionStepCost(bucket, {ssr_index, j}, row[j]);
  }
  return sum;
}

double TotalStepCost(const SsrBucket& bucket, const Placement& placement) {
  if (!placement.ShapedLike(bucket)) throw ShapeError("placement shape does not match bucket");
  double sum = 0.0;
  for (std::size_t i = 0; i < bucket.ssrs.size(); ++i) sum += SsrStepCost(bucket, i, placement);
  return sum;
}

double BucketStepCost(const SsrBucket& bucket, const Placement& placement) {
  if (bucket.ssrs.empty()) throw DomainError("bucket has no SSRs");
  return TotalStepCost(bucket, placement) / static_cast<double>(bucket.ssrs.size());
}

}  // namespace fogdeploy
