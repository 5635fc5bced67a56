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

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fogdeploy/baselines.hpp"
#include "fogdeploy/cost_model.hpp"
#include "fogdeploy/errors.hpp"
#include "fogdeploy/experiment.hpp"
#include "fogdeploy/serialization.hpp"

namespace fogdeploy::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string checkpoint;
  std::optional<std::size_t> episodes;
  std::optional<std::size_t> sweep_total;
  std::string input;
};

// --config, then $FOGDEPLOY_CONFIG, then built-in defaults; flags win over
// file values.
ExperimentConfig LoadConfig(const Options& o) {
  std::string path = o.config;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnvVar); env && *env) path = env;
  }
  ExperimentConfig cfg = path.empty() ? ExperimentConfig{}
                                      : ExperimentConfigFromJson(ReadJsonFile(path));
  if (o.seed) {
    cfg.generator.seed = *o.seed;
    cfg.agent.seed = *o.seed;
  }
  if (o.episodes) cfg.agent.episodes = *o.episodes;
  CheckExperimentConfig(cfg);
  return cfg;
}

std::string JoinPath(const std::string& dir, const std::string& file) {
  if (dir.empty()) return file;
  return dir.back() == '/' ? dir + file : dir + "/" + file;
}

json PlacementToJson(const SsrBucket& bucket, const Placement& p) {
  json rows = json::array();
  for (std::size_t i = 0; i < bucket.ssrs.size(); ++i) {
    json row = json::array();
    for (const FunctionState& s : p.Row(i)) row.push_back(s.on_fog ? "fog" : "cloud");
    rows.push_back(std::move(row));
  }
  return rows;
}

void PrintViolations(const std::vector<std::string>& violations, std::ostream& out) {
  if (violations.empty()) {
    out << "validation: ok\n";
    return;
  }
  out << "validation: " << violations.size() << " violation(s)\n";
  for (const auto& v : violations) out << "  - " << v << '\n';
}

int CmdGenerate(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = LoadConfig(o);
  const SsrBucket bucket = o.sweep_total ? GenerateSweepBucket(cfg.generator, *o.sweep_total)
                                         : GenerateBucket(cfg.generator);
  const std::string text = BucketToJson(bucket).dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
  } else {
    WriteTextFile(o.out, text);
    out << "wrote " << o.out << " (" << bucket.ssrs.size() << " SSRs, "
        << bucket.FunctionCount() << " functions)\n";
  }
  const auto violations = ValidateBucket(bucket);
  PrintViolations(violations, o.out.empty() ? std::cerr : out);
  return violations.empty() ? kExitOk : kExitRuntime;
}

int CmdTrain(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = LoadConfig(o);
  const std::string dir = o.out.empty() ? cfg.output_dir : o.out;
  const std::string checkpoint =
      o.checkpoint.empty() ? JoinPath(dir, "checkpoint.json") : o.checkpoint;
  const TrainingResult result = TrainAgent(cfg);
  WriteTextFile(checkpoint, NetworkToJson(result.network).dump() + "\n");
  WriteTextFile(JoinPath(dir, "training_log.csv"), TrainingLogCsv(result.log));
  out << "trained " << result.log.size() << " episodes; checkpoint " << checkpoint << '\n';
  return kExitOk;
}

int CmdCompare(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = LoadConfig(o);
  const std::string dir = o.out.empty() ? cfg.output_dir : o.out;
  std::optional<ValueNetwork> net;
  bool needs_net = false;
  for (Algorithm a : cfg.algorithms) needs_net |= a == Algorithm::kDefdrel;
  if (needs_net) {
    if (o.checkpoint.empty()) throw ConfigError("compare with defdrel needs --checkpoint");
    net = NetworkFromJson(ReadJsonFile(o.checkpoint));
    if (net->InputSize() != EncodingLength(cfg.env.max_functions)) {
      throw ConfigError("checkpoint input size does not match max_functions");
    }
  }
  const auto rows = RunComparison(cfg, net ? &*net : nullptr);
  WriteTextFile(JoinPath(dir, "results.csv"), DetailCsv(rows));
  WriteTextFile(JoinPath(dir, "results_mean.csv"), AggregateCsv(rows));
  if (net) {
    std::ostringstream records;
    for (std::size_t n : cfg.sweep) {
      for (std::size_t run = 0; run < cfg.runs_per_point; ++run) {
        const auto bucket = EvaluationBucket(cfg, n, run);
        const EpisodeRecord r =
            RunEpisode(bucket, cfg.env, GreedyPolicy(*net),
                       "n" + std::to_string(n) + "-run" + std::to_string(run));
        records << EpisodeRecordToJson(r).dump() << '\n';
      }
    }
    WriteTextFile(JoinPath(dir, "defdrel_episodes.jsonl"), records.str());
  }
  out << "wrote " << rows.size() << " rows to " << JoinPath(dir, "results.csv") << '\n';
  return kExitOk;
}

int CmdOracle(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw ConfigError("oracle needs a bucket file");
  const SsrBucket bucket = BucketFromJson(ReadJsonFile(o.input));
  const OracleResult best = BruteForceOptimum(bucket);

  json report;
  report["functions"] = bucket.FunctionCount();
  report["feasible_placements"] = best.feasible_placements;
  report["step_cost_optimum"] = {
      {"total_step_cost", best.min_total_step_cost},
      {"objective_sum", EvaluateObjective(bucket, best.best_step_cost_placement).sum},
      {"placement", PlacementToJson(bucket, best.best_step_cost_placement)}};
  report["objective_optimum"] = {
      {"total_step_cost", TotalStepCost(bucket, best.best_objective_placement)},
      {"objective_sum", best.min_objective_sum},
      {"placement", PlacementToJson(bucket, best.best_objective_placement)}};
  report["criteria_agree"] = best.best_step_cost_placement == best.best_objective_placement;

  bool bound_ok = true;
  json baselines = json::object();
  Rng rng(0);
  const std::pair<const char*, Placement> candidates[] = {
      {"fog_first", FogFirst(bucket)},
      {"cloud_only", CloudOnly(bucket)},
      {"random", RandomFeasible(bucket, rng)},
      {"greedy_cost", GreedyCost(bucket)}};
  for (const auto& [name, placement] : candidates) {
    const double step = TotalStepCost(bucket, placement);
    const double objective = EvaluateObjective(bucket, placement).sum;
    bound_ok &= best.min_total_step_cost <= step && best.min_objective_sum <= objective;
    baselines[name] = {{"total_step_cost", step}, {"objective_sum", objective}};
  }
  report["baselines"] = std::move(baselines);
  report["bound_check"] = bound_ok ? "ok" : "violated";
  out << report.dump(2) << '\n';
  if (!bound_ok) {
    err << "error: a baseline beat the exhaustive optimum\n";
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdValidate(const Options& o, std::ostream& out) {
  if (o.input.empty()) throw ConfigError("validate needs a file");
  const json doc = ReadJsonFile(o.input);
  if (doc.is_object() && doc.contains("ssrs")) {
    const auto violations = ValidateBucket(ParseBucketUnchecked(doc));
    out << "bucket " << o.input << '\n';
    PrintViolations(violations, out);
    return violations.empty() ? kExitOk : kExitRuntime;
  }
  const ExperimentConfig cfg = ExperimentConfigFromJson(doc);
  CheckExperimentConfig(cfg);
  out << "config " << o.input << "\nvalidation: ok\n";
  return kExitOk;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fog/cloud serverless function placement experiments", "fogdeploy"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* cmd) {
    cmd->add_option("--config", o.config,
                    std::string("experiment config JSON (default: $") + kConfigEnvVar + ")");
    cmd->add_option("--seed", o.seed, "override generator and agent seeds");
  };
  CLI::App* generate = app.add_subcommand("generate", "write a synthetic bucket");
  add_common(generate);
  generate->add_option("--out", o.out, "bucket JSON path (default: stdout)");
  generate->add_option("--sweep-total", o.sweep_total,
                       "generate a 10-SSR sweep bucket with this many functions")
      ->check(CLI::Range(10, 100));

  CLI::App* train = app.add_subcommand("train", "train the placement agent");
  add_common(train);
  train->add_option("--out", o.out, "output directory (default: experiment.output_dir)");
  train->add_option("--checkpoint", o.checkpoint, "checkpoint path");
  train->add_option("--episodes", o.episodes, "override agent.episodes");

  CLI::App* compare = app.add_subcommand("compare", "evaluate algorithms over the sweep");
  add_common(compare);
  compare->add_option("--out", o.out, "output directory (default: experiment.output_dir)");
  compare->add_option("--checkpoint", o.checkpoint, "trained checkpoint");

  CLI::App* oracle = app.add_subcommand("oracle", "exhaustive optimum of a small bucket");
  oracle->add_option("bucket", o.input, "bucket JSON")->required();

  CLI::App* validate = app.add_subcommand("validate", "check a bucket or config file");
  validate->add_option("file", o.input, "bucket or config JSON")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (generate->parsed()) return CmdGenerate(o, out);
    if (train->parsed()) return CmdTrain(o, out);
    if (compare->parsed()) return CmdCompare(o, out);
    if (oracle->parsed()) return CmdOracle(o, out, err);
    if (validate->parsed()) return CmdValidate(o, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const GenerationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const SizeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericFault& e) {
    err << "error: numeric fault: " << e.what() << '\n';
    return kExitRuntime;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace fogdeploy::cli
