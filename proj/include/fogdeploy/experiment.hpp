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
#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fogdeploy/agent.hpp"
#include "fogdeploy/env.hpp"
#include "fogdeploy/metrics.hpp"
#include "fogdeploy/workload.hpp"

namespace fogdeploy {

enum class Algorithm { kDefdrel, kFogFirst, kCloudOnly, kRandom, kGreedyCost };

const char* ToString(Algorithm a);
Algorithm AlgorithmFromString(const std::string& name);

struct ExperimentConfig {
  GeneratorConfig generator;
  AgentConfig agent;
  std::vector<std::size_t> sweep = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
  std::vector<Algorithm> algorithms = {Algorithm::kDefdrel, Algorithm::kFogFirst,
                                       Algorithm::kCloudOnly, Algorithm::kRandom,
                                       Algorithm::kGreedyCost};
  std::size_t runs_per_point = 5;
  std::string output_dir = "results";
  EnvOptions env;
};

// Sections generator, agent and experiment; every key optional.
ExperimentConfig ExperimentConfigFromJson(const nlohmann::json& doc);
nlohmann::json ExperimentConfigToJson(const ExperimentConfig& cfg);
// Throws ConfigError / GenerationError.
void CheckExperimentConfig(const ExperimentConfig& cfg);

// Seed streams. Training and evaluation buckets never share a seed.
std::shared_ptr<const SsrBucket> TrainingBucket(const ExperimentConfig& cfg, std::size_t episode);
std::shared_ptr<const SsrBucket> EvaluationBucket(const ExperimentConfig& cfg,
                                                  std::size_t total_functions, std::size_t run);

// Trains on sweep-shaped buckets with sizes drawn from the sweep list.
TrainingResult TrainAgent(const ExperimentConfig& cfg);

struct ComparisonRow {
  std::size_t total_functions = 0;
  Algorithm algorithm = Algorithm::kCloudOnly;
  std::size_t run = 0;
  PlacementReport report;
};

// Every (N, algorithm, run) on shared evaluation buckets, rows ordered by
// N, then algorithm (config order), then run. net may be null when the
// learned agent is not among the algorithms.
std::vector<ComparisonRow> RunComparison(const ExperimentConfig& cfg, const ValueNetwork* net);

Placement PlaceWith(Algorithm algorithm, const SsrBucket& bucket, const ValueNetwork* net,
                    const EnvOptions& env, std::uint64_t random_seed);

const std::vector<std::string>& DetailCsvColumns();
const std::vector<std::string>& AggregateCsvColumns();
std::string DetailCsv(const std::vector<ComparisonRow>& rows);
// Mean over runs per (N, algorithm); an average absent in every run stays empty.
std::string AggregateCsv(const std::vector<ComparisonRow>& rows);
std::string TrainingLogCsv(const std::vector<TrainingLogEntry>& log);

}  // namespace fogdeploy
