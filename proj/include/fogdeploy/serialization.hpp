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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fogdeploy/agent.hpp"
#include "fogdeploy/domain.hpp"
#include "fogdeploy/env.hpp"
#include "fogdeploy/workload.hpp"

namespace fogdeploy {

// Bucket document: top-level keys users, ssrs, fog, cloud,
// importance_factors, distance_cap, priority_blend and optional delta.
// Derived priorities are written for inspection and ignored on load.
nlohmann::json BucketToJson(const SsrBucket& bucket);

// Parses without validation or derived fields; for reporting violations.
// Throws ConfigError on a malformed document.
SsrBucket ParseBucketUnchecked(const nlohmann::json& doc);

// Parses, validates and computes derived fields. Throws ConfigError listing
// the violations of an invalid bucket.
SsrBucket BucketFromJson(const nlohmann::json& doc);

nlohmann::json GeneratorConfigToJson(const GeneratorConfig& cfg);
// Missing keys keep the values already in cfg; unknown keys are rejected.
void MergeGeneratorConfig(const nlohmann::json& doc, GeneratorConfig& cfg);

nlohmann::json AgentConfigToJson(const AgentConfig& cfg);
void MergeAgentConfig(const nlohmann::json& doc, AgentConfig& cfg);

// Versioned checkpoint: layer sizes header plus row-major weight arrays.
nlohmann::json NetworkToJson(const ValueNetwork& net);
ValueNetwork NetworkFromJson(const nlohmann::json& doc);

nlohmann::json EpisodeRecordToJson(const EpisodeRecord& record);
EpisodeRecord EpisodeRecordFromJson(const nlohmann::json& doc, const SsrBucket& bucket);

// Whole-file helpers. Read errors and parse errors raise ConfigError.
nlohmann::json ReadJsonFile(const std::string& path);
void WriteTextFile(const std::string& path, const std::string& text);

// Shortest round-trip decimal representation used by every text output.
std::string FormatDouble(double v);

}  // namespace fogdeploy
