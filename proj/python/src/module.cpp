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


// Python bindings. Buckets, configs, checkpoints and reports cross the
// boundary as JSON text; the Python package decodes them.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <utility>

#include "fogdeploy/agent.hpp"
#include "fogdeploy/baselines.hpp"
#include "fogdeploy/cost_model.hpp"
#include "fogdeploy/errors.hpp"
#include "fogdeploy/experiment.hpp"
#include "fogdeploy/metrics.hpp"
#include "fogdeploy/serialization.hpp"
#include "fogdeploy/workload.hpp"

namespace py = pybind11;
using nlohmann::json;

namespace fogdeploy {
namespace {

ExperimentConfig ParseConfig(const std::string& text) {
  ExperimentConfig cfg = ExperimentConfigFromJson(json::parse(text.empty() ? "{}" : text));
  CheckExperimentConfig(cfg);
  return cfg;
}

json PlacementJson(const SsrBucket& bucket, const Placement& p) {
  json rows = json::array();
  for (std::size_t i = 0; i < bucket.ssrs.size(); ++i) {
    json row = json::array();
    for (const FunctionState& s : p.Row(i)) row.push_back(s.on_fog ? "fog" : "cloud");
    rows.push_back(std::move(row));
  }
  return rows;
}

json Side(const EnvironmentSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? json(*v) : json(nullptr); };
  return {{"count", s.count},
          {"avg_code_size", opt(s.avg_code_size)},
          {"avg_input_size", opt(s.avg_input_size)},
          {"avg_critical_value", opt(s.avg_critical_value)},
          {"avg_priority", opt(s.avg_priority)}};
}

json ReportJson(const PlacementReport& r) {
  json fog_share, cloud_share, critical = json::array();
  for (ResourceKind k : kResourceKinds) {
    fog_share[ToString(k)] = r.fog_demand_share[static_cast<std::size_t>(k)];
    cloud_share[ToString(k)] = r.cloud_demand_share[static_cast<std::size_t>(k)];
  }
  for (const CriticalRow& c : r.critical) {
    critical.push_back({{"value", c.value}, {"fog", c.fog}, {"cloud", c.cloud},
                        {"fog_percent", c.fog_percent}, {"cloud_percent", c.cloud_percent}});
  }
  return {{"total_functions", r.total_functions},
          {"fog_fraction", r.fog_fraction},
          {"cloud_fraction", r.cloud_fraction},
          {"fog_demand_share", fog_share},
          {"cloud_demand_share", cloud_share},
          {"fog", Side(r.fog)},
          {"cloud", Side(r.cloud)},
          {"critical", critical},
          {"total_step_cost", r.total_step_cost},
          {"objective_sum", r.objective_sum}};
}

std::string GenerateBucketJson(const std::string& config, std::optional<std::size_t> total) {
  const ExperimentConfig cfg = ParseConfig(config);
  const SsrBucket b = total ? GenerateSweepBucket(cfg.generator, *total)
                            : GenerateBucket(cfg.generator);
  return BucketToJson(b).dump();
}

std::vector<std::string> ValidateBucketJson(const std::string& bucket) {
  return ValidateBucket(ParseBucketUnchecked(json::parse(bucket)));
}

std::string PlaceJson(const std::string& bucket_text, const std::string& algorithm,
                      const std::string& checkpoint, std::uint64_t seed) {
  const SsrBucket bucket = BucketFromJson(json::parse(bucket_text));
  const Algorithm a = AlgorithmFromString(algorithm);
  std::optional<ValueNetwork> net;
  if (!checkpoint.empty()) net = NetworkFromJson(json::parse(checkpoint));
  EnvOptions env;
  if (net) {
    env.max_functions = (net->InputSize() - 1 - kCurrentFeatures) / kSlotFeatures;
  }
  const Placement p = PlaceWith(a, bucket, net ? &*net : nullptr, env, seed);
  return json{{"placement", PlacementJson(bucket, p)}, {"report", ReportJson(Report(bucket, p))}}
      .dump();
}

std::string OracleJson(const std::string& bucket_text) {
  const SsrBucket bucket = BucketFromJson(json::parse(bucket_text));
  const OracleResult r = BruteForceOptimum(bucket);
  return json{{"min_total_step_cost", r.min_total_step_cost},
              {"step_cost_placement", PlacementJson(bucket, r.best_step_cost_placement)},
              {"min_objective_sum", r.min_objective_sum},
              {"objective_placement", PlacementJson(bucket, r.best_objective_placement)},
              {"feasible_placements", r.feasible_placements}}
      .dump();
}

double StepCostOf(const std::string& bucket_text, std::size_t ssr, std::size_t index,
                  const std::string& side) {
  const SsrBucket bucket = BucketFromJson(json::parse(bucket_text));
  FunctionState s;
  if (side == "fog") {
    s = FunctionState::Fog();
  } else if (side == "cloud") {
    s = FunctionState::Cloud();
  } else {
    throw ConfigError("side must be 'fog' or 'cloud'");
  }
  return FunctionStepCost(bucket, FunctionId(ssr, index), s);
}

std::pair<std::string, std::string> TrainJson(const std::string& config) {
  const ExperimentConfig cfg = ParseConfig(config);
  py::gil_scoped_release release;
  const TrainingResult r = TrainAgent(cfg);
  return {NetworkToJson(r.network).dump(), TrainingLogCsv(r.log)};
}

std::pair<std::string, std::string> CompareJson(const std::string& config,
                                                const std::string& checkpoint) {
  const ExperimentConfig cfg = ParseConfig(config);
  std::optional<ValueNetwork> net;
  if (!checkpoint.empty()) net = NetworkFromJson(json::parse(checkpoint));
  py::gil_scoped_release release;
  const auto rows = RunComparison(cfg, net ? &*net : nullptr);
  return {DetailCsv(rows), AggregateCsv(rows)};
}

}  // namespace
}  // namespace fogdeploy

PYBIND11_MODULE(_core, m) {
  using namespace fogdeploy;
  m.doc() = "fogdeploy simulator core";
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SizeError>(m, "SizeError", PyExc_ValueError);
  m.def("generate_bucket", &GenerateBucketJson, py::arg("config") = "",
        py::arg("total_functions") = std::nullopt);
  m.def("validate_bucket", &ValidateBucketJson, py::arg("bucket"));
  m.def("place", &PlaceJson, py::arg("bucket"), py::arg("algorithm"),
        py::arg("checkpoint") = "", py::arg("seed") = 0);
  m.def("oracle", &OracleJson, py::arg("bucket"));
  m.def("step_cost", &StepCostOf, py::arg("bucket"), py::arg("ssr"), py::arg("index"),
        py::arg("side"));
  m.def("train", &TrainJson, py::arg("config"));
  m.def("compare", &CompareJson, py::arg("config"), py::arg("checkpoint") = "");
}
