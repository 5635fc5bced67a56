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

#include "fogdeploy/workload.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fogdeploy/errors.hpp"
#include "fogdeploy/rng.hpp"

namespace fogdeploy {

namespace {

void CheckRange(const Range& r, const char* name, bool positive_min = false) {
  if (!std::isfinite(r.min) || !std::isfinite(r.max) || r.min > r.max || r.min < 0.0) {
    throw ConfigError(std::string("invalid range for ") + name);
  }
  if (positive_min && !(r.min > 0.0)) {
    throw ConfigError(std::string(name) + " range must be strictly positive");
  }
}

void CheckRange(const IntRange& r, const char* name, std::int64_t lowest) {
  if (r.min > r.max || r.min < lowest) {
    throw ConfigError(std::string("invalid range for ") + name);
  }
}

User SampleUser(std::size_t id, const GeneratorConfig& cfg, Rng& rng) {
  User u;
  u.id = id;
  // Uniform over the disc: radius ~ D * sqrt(U).
  const double radius = std::min(cfg.distance_cap * std::sqrt(rng.Uniform()),
                                 cfg.distance_cap);
  const double angle = 2.0 * std::numbers::pi * rng.Uniform();
  u.position = {radius * std::cos(angle), radius * std::sin(angle)};
  u.latency = rng.Uniform(cfg.latency.min, cfg.latency.max);
  return u;
}

ServerlessFunction SampleFunction(FunctionId id, const GeneratorConfig& cfg, Rng& rng) {
  ServerlessFunction fn;
  fn.id = id;
  fn.code_size = rng.Uniform(cfg.code_size.min, cfg.code_size.max);
  fn.input_size = rng.Uniform(cfg.input_size.min, cfg.input_size.max);
  fn.critical_value = static_cast<int>(
      rng.UniformInt(cfg.critical_value.min, cfg.critical_value.max));
  const Range* ranges[] = {&cfg.cpu, &cfg.ram, &cfg.storage, &cfg.net_io};
  for (ResourceKind kind : kResourceKinds) {
    const Range& r = *ranges[static_cast<int>(kind)];
    const double total = rng.Uniform(r.min, r.max);
    const double base_share = rng.Uniform();
    fn.base_demand[kind] = total * base_share;
    fn.supplementary_demand[kind] = total - fn.base_demand[kind];
  }
  return fn;
}

SsrBucket Assemble(const GeneratorConfig& cfg, Rng& rng,
                   const std::vector<std::size_t>& sizes) {
  SsrBucket bucket;
  bucket.fog = cfg.fog;
  bucket.cloud = cfg.cloud;
  bucket.importance_factors = cfg.importance_factors;
  bucket.distance_cap = cfg.distance_cap;
  bucket.priority_blend = cfg.priority_blend;
  bucket.delta = cfg.delta;

  for (std::size_t i = 0; i < sizes.size(); ++i) {
    bucket.users.push_back(SampleUser(i, cfg, rng));
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    Ssr ssr;
    ssr.user_id = i;
    for (std::size_t j = 0; j < sizes[i]; ++j) {
      ssr.functions.push_back(SampleFunction({i, j}, cfg, rng));
    }
    bucket.ssrs.push_back(std::move(ssr));
  }
  ComputeDerivedFields(bucket);
  return bucket;
}

}  // namespace

void CheckGeneratorConfig(const GeneratorConfig& cfg) {
  CheckRange(cfg.n_ssrs, "n_ssrs", 1);
  CheckRange(cfg.functions_per_ssr, "functions_per_ssr", 1);
  CheckRange(cfg.code_size, "code_size", true);
  CheckRange(cfg.input_size, "input_size");
  if (!(cfg.input_size.max > 0.0)) throw ConfigError("input_size range must reach above zero");
  CheckRange(cfg.cpu, "cpu");
  CheckRange(cfg.ram, "ram");
  CheckRange(cfg.storage, "storage");
  CheckRange(cfg.net_io, "net_io");
  CheckRange(cfg.critical_value, "critical_value", 1);
  if (cfg.critical_value.max > 5) throw ConfigError("critical_value must lie in 1..5");
  CheckRange(cfg.latency, "latency", true);
  if (!(cfg.distance_cap > 0.0)) throw ConfigError("distance_cap must be positive");
  if (!(cfg.priority_blend >= 0.0 && cfg.priority_blend <= 1.0)) {
    throw ConfigError("priority_blend must lie in [0, 1]");
  }
  if (!(cfg.delta > 0.0)) throw ConfigError("delta must be positive");
  double factor_sum = 0.0;
  for (double w : cfg.importance_factors) {
    if (!(w >= 0.0)) throw ConfigError("importance factors must be non-negative");
    factor_sum += w;
  }
  if (std::abs(factor_sum - 1.0) > 1e-9) throw ConfigError("importance factors must sum to 1");
  for (const EnvironmentLimits* l : {&cfg.fog, &cfg.cloud}) {
    if (!l->per_function_cap.AllPositiveFinite() || !(l->code_size_limit > 0.0) ||
        !(l->input_size_limit > 0.0) || !(l->link_latency >= 0.0)) {
      throw ConfigError("environment limits must be positive");
    }
  }
  if (!cfg.fog.per_function_cap.FitsWithin(cfg.cloud.per_function_cap)) {
    throw ConfigError("fog per-function cap must not exceed the cloud cap");
  }

  const ResourceVector max_demand{cfg.cpu.max, cfg.ram.max, cfg.storage.max, cfg.net_io.max};
  if (!max_demand.FitsWithin(cfg.cloud.per_function_cap) ||
      cfg.code_size.max > cfg.cloud.code_size_limit ||
      cfg.input_size.max > cfg.cloud.input_size_limit) {
    throw GenerationError("configured demand ranges exceed the cloud limits");
  }
}

SsrBucket GenerateBucket(const GeneratorConfig& cfg) {
  CheckGeneratorConfig(cfg);
  Rng rng(cfg.seed);
  const auto n = static_cast<std::size_t>(rng.UniformInt(cfg.n_ssrs.min, cfg.n_ssrs.max));
  std::vector<std::size_t> sizes(n);
  for (std::size_t& s : sizes) {
    s = static_cast<std::size_t>(
        rng.UniformInt(cfg.functions_per_ssr.min, cfg.functions_per_ssr.max));
  }
  return Assemble(cfg, rng, sizes);
}

SsrBucket GenerateSweepBucket(const GeneratorConfig& cfg, std::size_t total_functions) {
  if (total_functions < kSweepMinFunctions || total_functions > kSweepMaxFunctions) {
    throw DomainError("sweep total must lie in [10, 100], got " +
                      std::to_string(total_functions));
  }
  CheckGeneratorConfig(cfg);
  Rng rng(cfg.seed);
  constexpr std::size_t kMaxPerSsr = kSweepMaxFunctions / kSweepSsrCount;
  std::vector<std::size_t> sizes(kSweepSsrCount, 1);
  std::vector<std::size_t> open(kSweepSsrCount);
  for (std::size_t i = 0; i < open.size(); ++i) open[i] = i;
  for (std::size_t left = total_functions - kSweepSsrCount; left > 0; --left) {
    const auto pick = static_cast<std::size_t>(
        rng.UniformInt(0, static_cast<std::int64_t>(open.size()) - 1));
    if (++sizes[open[pick]] == kMaxPerSsr) open.erase(open.begin() + pick);
  }
  return Assemble(cfg, rng, sizes);
}

}  // namespace fogdeploy
