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

#include "fogdeploy/serialization.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "fogdeploy/errors.hpp"

namespace fogdeploy {

using nlohmann::json;

namespace {

constexpr const char* kCheckpointFormat = "fogdeploy.value_network";
constexpr int kCheckpointVersion = 1;

void RejectUnknownKeys(const json& doc, std::initializer_list<const char*> known,
                       const std::string& where) {
  if (!doc.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> allowed(known.begin(), known.end());
  for (const auto& [key, value] : doc.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
T Get(const json& doc, const char* key, const std::string& where) {
  if (!doc.contains(key)) throw ConfigError("missing key '" + std::string(key) + "' in " + where);
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError("bad value for '" + std::string(key) + "' in " + where + ": " + e.what());
  }
}

template <typename T>
void Maybe(const json& doc, const char* key, T& out, const std::string& where) {
  if (doc.contains(key)) out = Get<T>(doc, key, where);
}

json ResourceToJson(const ResourceVector& v) {
  return {{"cpu", v.cpu}, {"ram", v.ram}, {"storage", v.storage}, {"net_io", v.net_io}};
}

ResourceVector ResourceFromJson(const json& doc, const std::string& where) {
  RejectUnknownKeys(doc, {"cpu", "ram", "storage", "net_io"}, where);
  return {Get<double>(doc, "cpu", where), Get<double>(doc, "ram", where),
          Get<double>(doc, "storage", where), Get<double>(doc, "net_io", where)};
}

json LimitsToJson(const EnvironmentLimits& l) {
  return {{"per_function_cap", ResourceToJson(l.per_function_cap)},
          {"code_size_limit", l.code_size_limit},
          {"input_size_limit", l.input_size_limit},
          {"link_latency", l.link_latency}};
}

EnvironmentLimits LimitsFromJson(const json& doc, const std::string& where) {
  RejectUnknownKeys(doc, {"per_function_cap", "code_size_limit", "input_size_limit", "link_latency"},
                    where);
  EnvironmentLimits l;
  l.per_function_cap = ResourceFromJson(Get<json>(doc, "per_function_cap", where),
                                        where + ".per_function_cap");
  l.code_size_limit = Get<double>(doc, "code_size_limit", where);
  l.input_size_limit = Get<double>(doc, "input_size_limit", where);
  l.link_latency = Get<double>(doc, "link_latency", where);
  return l;
}

json FactorsToJson(const ImportanceFactors& w) {
  return {{"cpu", w[0]}, {"ram", w[1]}, {"storage", w[2]}, {"net_io", w[3]}};
}

ImportanceFactors FactorsFromJson(const json& doc, const std::string& where) {
  const ResourceVector v = ResourceFromJson(doc, where);
  return {v.cpu, v.ram, v.storage, v.net_io};
}

json RangeToJson(const Range& r) { return json::array({r.min, r.max}); }
json RangeToJson(const IntRange& r) { return json::array({r.min, r.max}); }

template <typename R, typename V>
R RangeFromJson(const json& doc, const std::string& where) {
  try {
    if (doc.is_number()) {
      const V v = doc.get<V>();
      return {v, v};
    }
    if (doc.is_array() && doc.size() == 2) return {doc[0].get<V>(), doc[1].get<V>()};
  } catch (const json::exception& e) {
    throw ConfigError("bad range in " + where + ": " + e.what());
  }
  throw ConfigError(where + " must be a number or a [min, max] pair");
}

template <typename R, typename V>
void MaybeRange(const json& doc, const char* key, R& out, const std::string& where) {
  if (doc.contains(key)) out = RangeFromJson<R, V>(doc.at(key), where + "." + key);
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

json BucketToJson(const SsrBucket& bucket) {
  json users = json::array();
  for (const User& u : bucket.users) {
    users.push_back({{"id", u.id},
                     {"position", json::array({u.position.x, u.position.y})},
                     {"latency", u.latency},
                     {"priority", u.priority}});
  }
  json ssrs = json::array();
  for (const Ssr& s : bucket.ssrs) {
    json fns = json::array();
    for (const ServerlessFunction& f : s.functions) {
      fns.push_back({{"code_size", f.code_size},
                     {"input_size", f.input_size},
                     {"critical_value", f.critical_value},
                     {"base_demand", ResourceToJson(f.base_demand)},
                     {"supplementary_demand", ResourceToJson(f.supplementary_demand)},
                     {"priority", f.priority}});
    }
    ssrs.push_back({{"user_id", s.user_id}, {"functions", std::move(fns)}});
  }
  return {{"users", std::move(users)},
          {"ssrs", std::move(ssrs)},
          {"fog", LimitsToJson(bucket.fog)},
          {"cloud", LimitsToJson(bucket.cloud)},
          {"importance_factors", FactorsToJson(bucket.importance_factors)},
          {"distance_cap", bucket.distance_cap},
          {"priority_blend", bucket.priority_blend},
          {"delta", bucket.delta}};
}

SsrBucket ParseBucketUnchecked(const json& doc) {
  const std::string where = "bucket";
  RejectUnknownKeys(doc, {"users", "ssrs", "fog", "cloud", "importance_factors", "distance_cap",
                          "priority_blend", "delta"},
                    where);
  SsrBucket b;
  for (const json& u : Get<json>(doc, "users", where)) {
    RejectUnknownKeys(u, {"id", "position", "latency", "priority"}, "user");
    User user;
    user.id = Get<std::size_t>(u, "id", "user");
    const auto pos = Get<std::vector<double>>(u, "position", "user");
    if (pos.size() != 2) throw ConfigError("user position must be an [x, y] pair");
    user.position = {pos[0], pos[1]};
    user.latency = Get<double>(u, "latency", "user");
    b.users.push_back(user);
  }
  const json ssrs = Get<json>(doc, "ssrs", where);
  for (std::size_t i = 0; i < ssrs.size(); ++i) {
    const json& s = ssrs[i];
    const std::string sw = "ssrs[" + std::to_string(i) + "]";
    RejectUnknownKeys(s, {"user_id", "functions"}, sw);
    Ssr ssr;
    ssr.user_id = Get<std::size_t>(s, "user_id", sw);
    const json fns = Get<json>(s, "functions", sw);
    for (std::size_t j = 0; j < fns.size(); ++j) {
      const json& f = fns[j];
      const std::string fw = sw + ".functions[" + std::to_string(j) + "]";
      RejectUnknownKeys(f, {"code_size", "input_size", "critical_value", "base_demand",
                            "supplementary_demand", "priority"},
                        fw);
      ServerlessFunction fn;
      fn.id = {i, j};
      fn.code_size = Get<double>(f, "code_size", fw);
      fn.input_size = Get<double>(f, "input_size", fw);
      fn.critical_value = Get<int>(f, "critical_value", fw);
      fn.base_demand = ResourceFromJson(Get<json>(f, "base_demand", fw), fw + ".base_demand");
      fn.supplementary_demand = ResourceFromJson(Get<json>(f, "supplementary_demand", fw),
                                                 fw + ".supplementary_demand");
      ssr.functions.push_back(fn);
    }
    b.ssrs.push_back(std::move(ssr));
  }
  b.fog = LimitsFromJson(Get<json>(doc, "fog", where), "fog");
  b.cloud = LimitsFromJson(Get<json>(doc, "cloud", where), "cloud");
  b.importance_factors =
      FactorsFromJson(Get<json>(doc, "importance_factors", where), "importance_factors");
  b.distance_cap = Get<double>(doc, "distance_cap", where);
  b.priority_blend = Get<double>(doc, "priority_blend", where);
  Maybe(doc, "delta", b.delta, where);
  return b;
}

SsrBucket BucketFromJson(const json& doc) {
  SsrBucket b = ParseBucketUnchecked(doc);
  const auto violations = ValidateBucket(b);
  if (!violations.empty()) {
    std::string msg = "invalid bucket:";
    for (const auto& v : violations) msg += "\n  " + v;
    throw ConfigError(msg);
  }
  ComputeDerivedFields(b);
  return b;
}

json GeneratorConfigToJson(const GeneratorConfig& c) {
  return {{"seed", c.seed},
          {"n_ssrs", RangeToJson(c.n_ssrs)},
          {"functions_per_ssr", RangeToJson(c.functions_per_ssr)},
          {"code_size", RangeToJson(c.code_size)},
          {"input_size", RangeToJson(c.input_size)},
          {"cpu", RangeToJson(c.cpu)},
          {"ram", RangeToJson(c.ram)},
          {"storage", RangeToJson(c.storage)},
          {"net_io", RangeToJson(c.net_io)},
          {"critical_value", RangeToJson(c.critical_value)},
          {"fog", LimitsToJson(c.fog)},
          {"cloud", LimitsToJson(c.cloud)},
          {"distance_cap", c.distance_cap},
          {"latency", RangeToJson(c.latency)},
          {"priority_blend", c.priority_blend},
          {"importance_factors", FactorsToJson(c.importance_factors)},
          {"delta", c.delta}};
}

void MergeGeneratorConfig(const json& doc, GeneratorConfig& c) {
  const std::string w = "generator";
  RejectUnknownKeys(doc, {"seed", "n_ssrs", "functions_per_ssr", "code_size", "input_size", "cpu",
                          "ram", "storage", "net_io", "critical_value", "fog", "cloud",
                          "distance_cap", "latency", "priority_blend", "importance_factors",
                          "delta"},
                    w);
  Maybe(doc, "seed", c.seed, w);
  MaybeRange<IntRange, std::int64_t>(doc, "n_ssrs", c.n_ssrs, w);
  MaybeRange<IntRange, std::int64_t>(doc, "functions_per_ssr", c.functions_per_ssr, w);
  MaybeRange<Range, double>(doc, "code_size", c.code_size, w);
  MaybeRange<Range, double>(doc, "input_size", c.input_size, w);
  MaybeRange<Range, double>(doc, "cpu", c.cpu, w);
  MaybeRange<Range, double>(doc, "ram", c.ram, w);
  MaybeRange<Range, double>(doc, "storage", c.storage, w);
  MaybeRange<Range, double>(doc, "net_io", c.net_io, w);
  MaybeRange<IntRange, std::int64_t>(doc, "critical_value", c.critical_value, w);
  if (doc.contains("fog")) c.fog = LimitsFromJson(doc.at("fog"), w + ".fog");
  if (doc.contains("cloud")) c.cloud = LimitsFromJson(doc.at("cloud"), w + ".cloud");
  Maybe(doc, "distance_cap", c.distance_cap, w);
  MaybeRange<Range, double>(doc, "latency", c.latency, w);
  Maybe(doc, "priority_blend", c.priority_blend, w);
  if (doc.contains("importance_factors")) {
    c.importance_factors = FactorsFromJson(doc.at("importance_factors"), w + ".importance_factors");
  }
  Maybe(doc, "delta", c.delta, w);
}

json AgentConfigToJson(const AgentConfig& c) {
  return {{"learning_rate", c.learning_rate},
          {"discount", c.discount},
          {"epsilon_start", c.epsilon_start},
          {"epsilon_end", c.epsilon_end},
          {"epsilon_decay", c.epsilon_decay},
          {"batch_size", c.batch_size},
          {"replay_capacity", c.replay_capacity},
          {"target_sync_interval", c.target_sync_interval},
          {"episodes", c.episodes},
          {"hidden_sizes", c.hidden_sizes},
          {"seed", c.seed},
          {"warmup", c.warmup},
          {"update_every", c.update_every},
          {"max_grad_norm", c.max_grad_norm},
          {"decision_replay_fraction", c.decision_replay_fraction}};
}

void MergeAgentConfig(const json& doc, AgentConfig& c) {
  const std::string w = "agent";
  RejectUnknownKeys(doc, {"learning_rate", "discount", "epsilon_start", "epsilon_end",
                          "epsilon_decay", "batch_size", "replay_capacity", "target_sync_interval",
                          "episodes", "hidden_sizes", "seed", "warmup", "update_every",
                          "max_grad_norm", "decision_replay_fraction"},
                    w);
  Maybe(doc, "learning_rate", c.learning_rate, w);
  Maybe(doc, "discount", c.discount, w);
  Maybe(doc, "epsilon_start", c.epsilon_start, w);
  Maybe(doc, "epsilon_end", c.epsilon_end, w);
  Maybe(doc, "epsilon_decay", c.epsilon_decay, w);
  Maybe(doc, "batch_size", c.batch_size, w);
  Maybe(doc, "replay_capacity", c.replay_capacity, w);
  Maybe(doc, "target_sync_interval", c.target_sync_interval, w);
  Maybe(doc, "episodes", c.episodes, w);
  Maybe(doc, "hidden_sizes", c.hidden_sizes, w);
  Maybe(doc, "seed", c.seed, w);
  Maybe(doc, "warmup", c.warmup, w);
  Maybe(doc, "update_every", c.update_every, w);
  Maybe(doc, "max_grad_norm", c.max_grad_norm, w);
  Maybe(doc, "decision_replay_fraction", c.decision_replay_fraction, w);
}

json NetworkToJson(const ValueNetwork& net) {
  json sizes = json::array();
  sizes.push_back(net.InputSize());
  json layers = json::array();
  for (const DenseLayer& l : net.layers()) {
    sizes.push_back(l.weights.rows());
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(l.weights.size()));
    for (Eigen::Index r = 0; r < l.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < l.weights.cols(); ++c) w.push_back(l.weights(r, c));
    }
    layers.push_back({{"weights", std::move(w)},
                      {"bias", std::vector<double>(l.bias.data(), l.bias.data() + l.bias.size())}});
  }
  return {{"format", kCheckpointFormat},
          {"version", kCheckpointVersion},
          {"layer_sizes", std::move(sizes)},
          {"layers", std::move(layers)}};
}

ValueNetwork NetworkFromJson(const json& doc) {
  const std::string w = "checkpoint";
  RejectUnknownKeys(doc, {"format", "version", "layer_sizes", "layers"}, w);
  if (Get<std::string>(doc, "format", w) != kCheckpointFormat) {
    throw ConfigError("not a value-network checkpoint");
  }
  if (Get<int>(doc, "version", w) != kCheckpointVersion) {
    throw ConfigError("unsupported checkpoint version");
  }
  const auto sizes = Get<std::vector<std::size_t>>(doc, "layer_sizes", w);
  const json layers = Get<json>(doc, "layers", w);
  if (sizes.size() < 2 || layers.size() + 1 != sizes.size()) {
    throw ConfigError("checkpoint layer count does not match its header");
  }
  std::vector<DenseLayer> out;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(sizes[l]);
    const auto rows = static_cast<Eigen::Index>(sizes[l + 1]);
    const auto weights = Get<std::vector<double>>(layers[l], "weights", w);
    const auto bias = Get<std::vector<double>>(layers[l], "bias", w);
    if (weights.size() != static_cast<std::size_t>(in * rows) ||
        bias.size() != static_cast<std::size_t>(rows)) {
      throw ConfigError("checkpoint layer " + std::to_string(l) + " has the wrong size");
    }
    DenseLayer layer{Eigen::MatrixXd(rows, in), Eigen::VectorXd(rows)};
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < in; ++c) {
        layer.weights(r, c) = weights[static_cast<std::size_t>(r * in + c)];
      }
      layer.bias(r) = bias[static_cast<std::size_t>(r)];
    }
    out.push_back(std::move(layer));
  }
  return ValueNetwork(std::move(out));
}

json EpisodeRecordToJson(const EpisodeRecord& record) {
  json steps = json::array();
  for (std::size_t k = 0; k < record.actions.size(); ++k) {
    steps.push_back({{"ssr", record.sequence[k].ssr},
                     {"function", record.sequence[k].index},
                     {"action", ToString(record.actions[k])},
                     {"cost", record.step_costs[k]}});
  }
  json per_ssr = json::array();
  for (const CostBreakdown& c : record.summary.objective.per_ssr) {
    per_ssr.push_back({{"comm", c.comm}, {"comp", c.comp}, {"total", c.total}});
  }
  return {{"bucket_id", record.bucket_id},
          {"steps", std::move(steps)},
          {"total_step_cost", record.summary.total_step_cost},
          {"bucket_step_cost", record.summary.bucket_step_cost},
          {"objective", {{"per_ssr", std::move(per_ssr)},
                         {"sum", record.summary.objective.sum}}}};
}

EpisodeRecord EpisodeRecordFromJson(const json& doc, const SsrBucket& bucket) {
  const std::string w = "episode record";
  RejectUnknownKeys(doc, {"bucket_id", "steps", "total_step_cost", "bucket_step_cost", "objective"},
                    w);
  EpisodeRecord r;
  r.bucket_id = Get<std::string>(doc, "bucket_id", w);
  for (const json& s : Get<json>(doc, "steps", w)) {
    r.sequence.push_back({Get<std::size_t>(s, "ssr", w), Get<std::size_t>(s, "function", w)});
    const auto action = Get<std::string>(s, "action", w);
    if (action != "fog" && action != "cloud") throw ConfigError("unknown action '" + action + "'");
    r.actions.push_back(action == "fog" ? Action::kAssignFog : Action::kAssignCloud);
    r.step_costs.push_back(Get<double>(s, "cost", w));
  }
  r.summary.total_step_cost = Get<double>(doc, "total_step_cost", w);
  r.summary.bucket_step_cost = Get<double>(doc, "bucket_step_cost", w);
  const json obj = Get<json>(doc, "objective", w);
  for (const json& c : Get<json>(obj, "per_ssr", w)) {
    r.summary.objective.per_ssr.push_back(
        {Get<double>(c, "comm", w), Get<double>(c, "comp", w), Get<double>(c, "total", w)});
  }
  r.summary.objective.sum = Get<double>(obj, "sum", w);
  try {
    r.placement = PlacementFromSequence(bucket, r.sequence, r.actions);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("episode record does not match the bucket: ") + e.what());
  }
  return r;
}

json ReadJsonFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("malformed JSON in '" + path + "': " + e.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& text) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace fogdeploy
