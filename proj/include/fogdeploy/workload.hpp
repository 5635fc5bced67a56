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

#include "fogdeploy/domain.hpp"

namespace fogdeploy {

struct Range {
  double min = 0.0;
  double max = 0.0;
};

struct IntRange {
  std::int64_t min = 0;
  std::int64_t max = 0;
};

// Knobs of the synthetic workload. Defaults reproduce the published
// simulation table; the scalars it leaves open (coverage radius, link
// latency, blend weights, code-size limits) carry documented defaults.
struct GeneratorConfig {
  std::uint64_t seed = 42;
  IntRange n_ssrs{4, 10};
  IntRange functions_per_ssr{4, 10};

  Range code_size{10.0, 500.0};    // MB
  Range input_size{100.0, 2500.0}; // MB
  Range cpu{1.0, 4.0};             // cores
  Range ram{100.0, 2048.0};        // MB
  Range storage{10.0, 2048.0};     // MB
  Range net_io{10.0, 4096.0};      // KBps
  IntRange critical_value{1, 5};

  EnvironmentLimits fog{{2.0, 1024.0, 1024.0, 2048.0}, 300.0, 1500.0, 0.0};
  EnvironmentLimits cloud{{6.0, 5120.0, 10240.0, 10240.0}, 500.0, 2500.0, 40.0};

  double distance_cap = 100.0;  // km
  Range latency{5.0, 100.0};    // ms
  double priority_blend = 0.5;
  ImportanceFactors importance_factors = {0.25, 0.25, 0.25, 0.25};
  double delta = kDefaultDelta;
};

// Throws ConfigError for malformed ranges and GenerationError when the
// sampled workload could exceed the cloud limits.
void CheckGeneratorConfig(const GeneratorConfig& cfg);

SsrBucket GenerateBucket(const GeneratorConfig& cfg);

inline constexpr std::size_t kSweepSsrCount = 10;
inline constexpr std::size_t kSweepMinFunctions = 10;
inline constexpr std::size_t kSweepMaxFunctions = 100;

// Exactly total_functions functions over 10 SSRs with 1..10 functions each.
// The per-SSR size range of the config is ignored. Throws DomainError when
// total_functions lies outside [10, 100].
SsrBucket GenerateSweepBucket(const GeneratorConfig& cfg, std::size_t total_functions);

}  // namespace fogdeploy
