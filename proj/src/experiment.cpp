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

#include "fogdeploy/experiment.hpp"

#include <map>
#include <optional>
#include <sstream>

#include "fogdeploy/baselines.hpp"
#include "fogdeploy/errors.hpp"
#include "fogdeploy/serialization.hpp"

namespace fogdeploy {

using nlohmann::json;

namespace {

constexpr std::uint64_t kTrainSalt = 0x7a11'0000'0001ULL;
constexpr std::uint64_t kTrainSizeSalt = 0x7a11'0000'0002ULL;
constexpr std::uint64_t kEvalSalt = 0xe7a1'0000'0001ULL;
constexpr std::uint64_t kRandomSalt = 0x4a4d'0000'0001ULL;

// Numeric CSV values after the three key columns; nullopt renders empty.
std::vector<std::optional<double>> Values(const PlacementReport& r) {
  std::vector<std::optional<double>> v;
  v.push_back(r.fog_fraction);
  v.push_back(r.cloud_fraction);
  for (std::size_t k = 0; k < 4; ++k) {
    v.push_back(r.fog_demand_share[k]);
    v.push_back(r.cloud_demand_share[k]);
  }
  v.push_back(static_cast<double>(r.fog.count));
  v.push_back(static_cast<double>(r.cloud.count));
  v.push_back(r.fog.avg_code_size);
  v.push_back(r.cloud.avg_code_size);
  v.push_back(r.fog.avg_input_size);
  v.push_back(r.cloud.avg_input_size);
  v.push_back(r.fog.avg_critical_value);
  v.push_back(r.cloud.avg_critical_value);
  v.push_back(r.fog.avg_priority);
  v.push_back(r.cloud.avg_priority);
  for (const CriticalRow& row : r.critical) v.push_back(static_cast<double>(row.fog));
  for (const CriticalRow& row : r.critical) v.push_back(static_cast<double>(row.cloud));
  v.push_back(r.total_step_cost);
  v.push_back(r.objective_sum);
  return v;
}

std::vector<std::string> ValueColumns() {
  std::vector<std::string> c = {"fog_fraction", "cloud_fraction"};
  for (ResourceKind k : kResourceKinds) {
    c.push_back(std::string("fog_") + ToString(k) + "_share");
    c.push_back(std::string("cloud_") + ToString(k) + "_share");
  }
  for (const char* s : {"fog_count", "cloud_count", "fog_avg_code_size", "cloud_avg_code_size",
                        "fog_avg_input_size", "cloud_avg_input_size", "fog_avg_critical",
                        "cloud_avg_critical", "fog_avg_priority", "cloud_avg_priority"}) {
    c.push_back(s);
  }
  for (int v = 1; v <= 5; ++v) c.push_back("fog_critical_" + std::to_string(v));
  for (int v = 1; v <= 5; ++v) c.push_back("cloud_critical_" + std::to_string(v));
  c.push_back("total_step_cost");
  c.push_back("objective_sum");
  return c;
}

std::string Cell(const std::optional<double>& v) { return v ? FormatDouble(*v) : ""; }

void WriteRow(std::ostringstream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace

const char* ToString(Algorithm a) {
  switch (a) {
    case Algorithm::kDefdrel: return "defdrel";
    case Algorithm::kFogFirst: return "fog_first";
    case Algorithm::kCloudOnly: return "cloud_only";
    case Algorithm::kRandom: return "random";
    case Algorithm::kGreedyCost: return "greedy_cost";
  }
  return "?";
}

Algorithm AlgorithmFromString(const std::string& name) {
  for (Algorithm a : {Algorithm::kDefdrel, Algorithm::kFogFirst, Algorithm::kCloudOnly,
                      Algorithm::kRandom, Algorithm::kGreedyCost}) {
    if (name == ToString(a)) return a;
  }
  throw ConfigError("unknown algorithm '" + name + "'");
}

ExperimentConfig ExperimentConfigFromJson(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "generator" && key != "agent" && key != "experiment") {
      throw ConfigError("unknown config section '" + key + "'");
    }
  }
  ExperimentConfig cfg;
  if (doc.contains("generator")) MergeGeneratorConfig(doc.at("generator"), cfg.generator);
  if (doc.contains("agent")) MergeAgentConfig(doc.at("agent"), cfg.agent);
  if (doc.contains("experiment")) {
    const json& e = doc.at("experiment");
    if (!e.is_object()) throw ConfigError("experiment section must be an object");
    try {
      for (const auto& [key, value] : e.items()) {
        if (key == "sweep") {
          cfg.sweep = value.get<std::vector<std::size_t>>();
        } else if (key == "algorithms") {
          cfg.algorithms.clear();
          for (const auto& name : value.get<std::vector<std::string>>()) {
            cfg.algorithms.push_back(AlgorithmFromString(name));
          }
        } else if (key == "runs_per_point") {
          cfg.runs_per_point = value.get<std::size_t>();
        } else if (key == "output_dir") {
          cfg.output_dir = value.get<std::string>();
        } else if (key == "max_functions") {
          cfg.env.max_functions = value.get<std::size_t>();
        } else if (key == "processing_order") {
          const auto order = value.get<std::string>();
          if (order == "priority") {
            cfg.env.order = ProcessingOrder::kPriority;
          } else if (order == "insertion") {
            cfg.env.order = ProcessingOrder::kInsertion;
          } else {
            throw ConfigError("processing_order must be 'priority' or 'insertion'");
          }
        } else {
          throw ConfigError("unknown key '" + key + "' in experiment");
        }
      }
    } catch (const json::exception& ex) {
      throw ConfigError(std::string("bad value in experiment section: ") + ex.what());
    }
  }
  return cfg;
}

json ExperimentConfigToJson(const ExperimentConfig& cfg) {
  std::vector<std::string> algorithms;
  for (Algorithm a : cfg.algorithms) algorithms.push_back(ToString(a));
  return {{"generator", GeneratorConfigToJson(cfg.generator)},
          {"agent", AgentConfigToJson(cfg.agent)},
          {"experiment",
           {{"sweep", cfg.sweep},
            {"algorithms", algorithms},
            {"runs_per_point", cfg.runs_per_point},
            {"output_dir", cfg.output_dir},
            {"max_functions", cfg.env.max_functions},
            {"processing_order",
             cfg.env.order == ProcessingOrder::kPriority ? "priority" : "insertion"}}}};
}

void CheckExperimentConfig(const ExperimentConfig& cfg) {
  CheckGeneratorConfig(cfg.generator);
  CheckAgentConfig(cfg.agent);
  if (cfg.sweep.empty()) throw ConfigError("sweep must not be empty");
  for (std::size_t n : cfg.sweep) {
    if (n < kSweepMinFunctions || n > kSweepMaxFunctions) {
      throw ConfigError("sweep value " + std::to_string(n) + " outside [10, 100]");
    }
    if (n > cfg.env.max_functions) {
      throw ConfigError("sweep value " + std::to_string(n) + " exceeds max_functions");
    }
  }
  if (cfg.runs_per_point == 0) throw ConfigError("runs_per_point must be at least 1");
  if (cfg.algorithms.empty()) throw ConfigError("no algorithms selected");
}

std::shared_ptr<const SsrBucket> TrainingBucket(const ExperimentConfig& cfg, std::size_t episode) {
  Rng size_rng(DeriveSeed(cfg.generator.seed ^ kTrainSizeSalt, episode));
  const auto pick = static_cast<std::size_t>(
      size_rng.UniformInt(0, static_cast<std::int64_t>(cfg.sweep.size()) - 1));
  GeneratorConfig g = cfg.generator;
  g.seed = DeriveSeed(cfg.generator.seed ^ kTrainSalt, episode);
  return std::make_shared<const SsrBucket>(GenerateSweepBucket(g, cfg.sweep[pick]));
}

std::shared_ptr<const SsrBucket> EvaluationBucket(const ExperimentConfig& cfg,
                                                  std::size_t total_functions, std::size_t run) {
  GeneratorConfig g = cfg.generator;
  g.seed = DeriveSeed(cfg.generator.seed ^ kEvalSalt, total_functions, run);
  return std::make_shared<const SsrBucket>(GenerateSweepBucket(g, total_functions));
}

TrainingResult TrainAgent(const ExperimentConfig& cfg) {
  CheckExperimentConfig(cfg);
  return Train([&cfg](std::size_t episode) { return TrainingBucket(cfg, episode); }, cfg.env,
               cfg.agent);
}

Placement PlaceWith(Algorithm algorithm, const SsrBucket& bucket, const ValueNetwork* net,
                    const EnvOptions& env, std::uint64_t random_seed) {
  switch (algorithm) {
    case Algorithm::kDefdrel: {
      if (!net) throw ConfigError("defdrel requires a trained network");
      auto shared = std::make_shared<const SsrBucket>(bucket);
      return RunEpisode(shared, env, GreedyPolicy(*net)).placement;
    }
    case Algorithm::kFogFirst: return FogFirst(bucket);
    case Algorithm::kCloudOnly: return CloudOnly(bucket);
    case Algorithm::kRandom: {
      Rng rng(random_seed);
      return RandomFeasible(bucket, rng);
    }
    case Algorithm::kGreedyCost: return GreedyCost(bucket);
  }
  throw ConfigError("unknown algorithm");
}

std::vector<ComparisonRow> RunComparison(const ExperimentConfig& cfg, const ValueNetwork* net) {
  CheckExperimentConfig(cfg);
  std::vector<ComparisonRow> rows;
  for (std::size_t n : cfg.sweep) {
    std::vector<std::shared_ptr<const SsrBucket>> buckets;
    for (std::size_t run = 0; run < cfg.runs_per_point; ++run) {
      buckets.push_back(EvaluationBucket(cfg, n, run));
    }
    for (Algorithm a : cfg.algorithms) {
      for (std::size_t run = 0; run < cfg.runs_per_point; ++run) {
        const SsrBucket& b = *buckets[run];
        const Placement p =
            PlaceWith(a, b, net, cfg.env, DeriveSeed(cfg.generator.seed ^ kRandomSalt, n, run));
        rows.push_back({n, a, run, Report(b, p)});
      }
    }
  }
  return rows;
}

const std::vector<std::string>& DetailCsvColumns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"total_functions", "algorithm", "run"};
    for (auto& v : ValueColumns()) c.push_back(v);
    return c;
  }();
  return cols;
}

const std::vector<std::string>& AggregateCsvColumns() {
  static const std::vector<std::string> cols = [] {
    std::vector<std::string> c = {"total_functions", "algorithm", "runs"};
    for (auto& v : ValueColumns()) c.push_back("mean_" + v);
    return c;
  }();
  return cols;
}

std::string DetailCsv(const std::vector<ComparisonRow>& rows) {
  std::ostringstream out;
  WriteRow(out, DetailCsvColumns());
  for (const ComparisonRow& r : rows) {
    std::vector<std::string> cells = {std::to_string(r.total_functions), ToString(r.algorithm),
                                      std::to_string(r.run)};
    for (const auto& v : Values(r.report)) cells.push_back(Cell(v));
    WriteRow(out, cells);
  }
  return out.str();
}

std::string AggregateCsv(const std::vector<ComparisonRow>& rows) {
  struct Group {
    std::size_t runs = 0;
    std::vector<double> sums;
    std::vector<std::size_t> present;
  };
  // Keyed by first appearance so the output keeps the detail row order.
  std::vector<std::pair<std::size_t, Algorithm>> order;
  std::map<std::pair<std::size_t, int>, Group> groups;
  for (const ComparisonRow& r : rows) {
    const auto key = std::make_pair(r.total_functions, static_cast<int>(r.algorithm));
    auto [it, inserted] = groups.try_emplace(key);
    if (inserted) order.emplace_back(r.total_functions, r.algorithm);
    Group& g = it->second;
    const auto values = Values(r.report);
    if (g.sums.empty()) {
      g.sums.assign(values.size(), 0.0);
      g.present.assign(values.size(), 0);
    }
    ++g.runs;
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i]) {
        g.sums[i] += *values[i];
        ++g.present[i];
      }
    }
  }
  std::ostringstream out;
  WriteRow(out, AggregateCsvColumns());
  for (const auto& [n, a] : order) {
    const Group& g = groups.at({n, static_cast<int>(a)});
    std::vector<std::string> cells = {std::to_string(n), ToString(a), std::to_string(g.runs)};
    for (std::size_t i = 0; i < g.sums.size(); ++i) {
      cells.push_back(g.present[i] ? FormatDouble(g.sums[i] / static_cast<double>(g.present[i]))
                                   : "");
    }
    WriteRow(out, cells);
  }
  return out.str();
}

std::string TrainingLogCsv(const std::vector<TrainingLogEntry>& log) {
  std::ostringstream out;
  out << "episode,total_cost,epsilon,loss\n";
  for (const TrainingLogEntry& e : log) {
    out << e.episode << ',' << FormatDouble(e.total_cost) << ',' << FormatDouble(e.epsilon)
        << ',' << FormatDouble(e.loss) << '\n';
  }
  return out.str();
}

}  // namespace fogdeploy
