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

#include "fogdeploy/metrics.hpp"

#include "fogdeploy/cost_model.hpp"
#include "fogdeploy/errors.hpp"

namespace fogdeploy {

namespace {

struct Accumulator {
  std::size_t count = 0;
  double code = 0.0;
  double input = 0.0;
  double critical = 0.0;
  double priority = 0.0;
  ResourceVector demand;

  void Add(const ServerlessFunction& fn) {
    ++count;
    code += fn.code_size;
    input += fn.input_size;
    critical += fn.critical_value;
    priority += fn.priority;
    demand += fn.TotalDemand();
  }

  EnvironmentSummary Summary() const {
    EnvironmentSummary s;
    s.count = count;
    if (count > 0) {
      const auto n = static_cast<double>(count);
      s.avg_code_size = code / n;
      s.avg_input_size = input / n;
      s.avg_critical_value = critical / n;
      s.avg_priority = priority / n;
    }
    return s;
  }
};

void RequireComplete(const SsrBucket& bucket, const Placement& placement) {
  if (!placement.ShapedLike(bucket)) throw ShapeError("placement shape does not match bucket");
  if (!placement.Complete()) throw StateError("placement is incomplete");
}

}  // namespace

CriticalHistogram ComputeCriticalHistogram(const SsrBucket& bucket,
                                           const Placement& placement) {
  RequireComplete(bucket, placement);
  CriticalHistogram h{};
  for (int v = 1; v <= 5; ++v) h[v - 1].value = v;
  for (FunctionId id : bucket.FunctionIds()) {
    const int v = bucket.Function(id).critical_value;
    if (v < 1 || v > 5) throw DomainError("critical value outside 1..5");
    CriticalRow& row = h[v - 1];
    if (placement[id].on_fog) {
      ++row.fog;
    } else {
      ++row.cloud;
    }
  }
  for (CriticalRow& row : h) {
    const std::size_t n = row.fog + row.cloud;
    if (n == 0) continue;
    row.fog_percent = 100.0 * static_cast<double>(row.fog) / static_cast<double>(n);
    row.cloud_percent = 100.0 * static_cast<double>(row.cloud) / static_cast<double>(n);
  }
  return h;
}

PlacementReport Report(const SsrBucket& bucket, const Placement& placement) {
  RequireComplete(bucket, placement);
  Accumulator fog;
  Accumulator cloud;
  for (FunctionId id : bucket.FunctionIds()) {
    (placement[id].on_fog ? fog : cloud).Add(bucket.Function(id));
  }

  PlacementReport r;
  r.total_functions = fog.count + cloud.count;
  if (r.total_functions > 0) {
    const auto n = static_cast<double>(r.total_functions);
    r.fog_fraction = 100.0 * static_cast<double>(fog.count) / n;
    r.cloud_fraction = 100.0 * static_cast<double>(cloud.count) / n;
  }
  for (ResourceKind kind : kResourceKinds) {
    const auto k = static_cast<std::size_t>(kind);
    const double total = fog.demand[kind] + cloud.demand[kind];
    if (total > 0.0) {
      r.fog_demand_share[k] = 100.0 * fog.demand[kind] / total;
      r.cloud_demand_share[k] = 100.0 * cloud.demand[kind] / total;
    } else {
      r.fog_demand_share[k] = r.fog_fraction;
      r.cloud_demand_share[k] = r.cloud_fraction;
    }
  }
  r.fog = fog.Summary();
  r.cloud = cloud.Summary();
  r.critical = ComputeCriticalHistogram(bucket, placement);
  r.total_step_cost = TotalStepCost(bucket, placement);
  r.objective_sum = EvaluateObjective(bucket, placement).sum;
  return r;
}

}  // namespace fogdeploy
