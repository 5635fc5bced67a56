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
#include <cstddef>
#include <optional>

#include "fogdeploy/domain.hpp"

namespace fogdeploy {

// Per-environment averages; absent when the environment hosts nothing.
struct EnvironmentSummary {
  std::size_t count = 0;
  std::optional<double> avg_code_size;
  std::optional<double> avg_input_size;
  std::optional<double> avg_critical_value;
  std::optional<double> avg_priority;
};

struct CriticalRow {
  int value = 0;
  std::size_t fog = 0;
  std::size_t cloud = 0;
  double fog_percent = 0.0;    // of the functions carrying this value
  double cloud_percent = 0.0;
};

using CriticalHistogram = std::array<CriticalRow, 5>;

struct PlacementReport {
  std::size_t total_functions = 0;
  double fog_fraction = 0.0;    // percent of functions
  double cloud_fraction = 0.0;
  // Percent of the bucket's total demand of each kind hosted on each side.
  // A kind with zero total demand is split like the function counts.
  std::array<double, 4> fog_demand_share{};
  std::array<double, 4> cloud_demand_share{};
  EnvironmentSummary fog;
  EnvironmentSummary cloud;
  CriticalHistogram critical{};
  double total_step_cost = 0.0;
  double objective_sum = 0.0;
};

// Throws StateError for an incomplete placement.
PlacementReport Report(const SsrBucket& bucket, const Placement& placement);

CriticalHistogram ComputeCriticalHistogram(const SsrBucket& bucket,
                                           const Placement& placement);

}  // namespace fogdeploy
