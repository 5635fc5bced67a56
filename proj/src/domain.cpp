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

#include "fogdeploy/domain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

#include "fogdeploy/errors.hpp"
#include "fogdeploy/scoring.hpp"

namespace fogdeploy {

namespace {

std::string FormatNumber(double v) {
  char buf[64];
  if (std::isfinite(v) && std::round(v * 10.0) == v * 10.0) {
    std::snprintf(buf, sizeof buf, "%.1f", v);
  } else {
    std::snprintf(buf, sizeof buf, "%.12g", v);
  }
  return buf;
}

std::string Where(FunctionId id) {
  return "function (" + std::to_string(id.ssr) + ", " + std::to_string(id.index) + ")";
}

void CheckLimits(const EnvironmentLimits& limits, const std::string& name,
                 std::vector<std::string>& out) {
  if (!limits.per_function_cap.AllPositiveFinite()) {
    out.push_back(name + " per-function cap must be positive and finite");
  }
  if (!(limits.code_size_limit > 0.0) || !std::isfinite(limits.code_size_limit)) {
    out.push_back(name + " code size limit must be positive");
  }
  if (!(limits.input_size_limit > 0.0) || !std::isfinite(limits.input_size_limit)) {
    out.push_back(name + " input size limit must be positive");
  }
  if (!(limits.link_latency >= 0.0) || !std::isfinite(limits.link_latency)) {
    out.push_back(name + " link latency must be non-negative");
  }
}

}  // namespace

const char* ToString(ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kCpu: return "cpu";
    case ResourceKind::kRam: return "ram";
    case ResourceKind::kStorage: return "storage";
    case ResourceKind::kNetIo: return "net_io";
  }
  return "?";
}

double ResourceVector::operator[](ResourceKind kind) const {
  switch (kind) {
    case ResourceKind::kCpu: return cpu;
    case ResourceKind::kRam: return ram;
    case ResourceKind::kStorage: return storage;
    case ResourceKind::kNetIo: return net_io;
  }
  throw std::out_of_range("bad resource kind");
}

double& ResourceVector::operator[](ResourceKind kind) {
  switch (kind) {
    case ResourceKind::kCpu: return cpu;
    case ResourceKind::kRam: return ram;
    case ResourceKind::kStorage: return storage;
    case ResourceKind::kNetIo: return net_io;
  }
  throw std::out_of_range("bad resource kind");
}

ResourceVector& ResourceVector::operator+=(const ResourceVector& other) {
  cpu += other.cpu;
  ram += other.ram;
  storage += other.storage;
  net_io += other.net_io;
  return *this;
}

bool ResourceVector::FitsWithin(const ResourceVector& cap) const {
  return cpu <= cap.cpu && ram <= cap.ram && storage <= cap.storage &&
         net_io <= cap.net_io;
}

bool ResourceVector::AllNonNegativeFinite() const {
  for (ResourceKind k : kResourceKinds) {
    const double v = (*this)[k];
    if (!std::isfinite(v) || v < 0.0) return false;
  }
  return true;
}

bool ResourceVector::AllPositiveFinite() const {
  for (ResourceKind k : kResourceKinds) {
    const double v = (*this)[k];
    if (!std::isfinite(v) || !(v > 0.0)) return false;
  }
  return true;
}

std::size_t SsrBucket::FunctionCount() const {
  std::size_t n = 0;
  for (const Ssr& s : ssrs) n += s.functions.size();
  return n;
}

const User& SsrBucket::UserOf(const Ssr& ssr) const {
  for (const User& u : users) {
    if (u.id == ssr.user_id) return u;
  }
  throw DomainError("SSR references unknown user " + std::to_string(ssr.user_id));
}

std::vector<FunctionId> SsrBucket::FunctionIds() const {
  std::vector<FunctionId> ids;
  ids.reserve(FunctionCount());
  for (std::size_t i = 0; i < ssrs.size(); ++i) {
    for (std::size_t j = 0; j < ssrs[i].functions.size(); ++j) ids.push_back({i, j});
  }
  return ids;
}

void ComputeDerivedFields(SsrBucket& bucket) {
  std::vector<double> latencies;
  latencies.reserve(bucket.users.size());
  for (const User& u : bucket.users) latencies.push_back(u.latency);
  for (User& u : bucket.users) {
    const double pd = DistancePriority(UserDistance({0.0, 0.0}, u.position),
                                       bucket.distance_cap);
    const double pl = LatencyPriority(u.latency, latencies);
    u.priority = UserPriority(pd, pl, bucket.priority_blend);
  }
  for (Ssr& ssr : bucket.ssrs) {
    for (ServerlessFunction& fn : ssr.functions) {
      fn.priority = FunctionPriority(fn, ssr, bucket.delta);
    }
  }
}

Placement::Placement(const SsrBucket& bucket) {
  rows_.reserve(bucket.ssrs.size());
  for (const Ssr& s : bucket.ssrs) rows_.emplace_back(s.functions.size());
}

std::size_t Placement::FunctionCount() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

std::size_t Placement::FogCount() const {
  std::size_t n = 0;
  for (const auto& r : rows_) {
    for (const FunctionState& s : r) n += s.on_fog && !s.on_cloud;
  }
  return n;
}

bool Placement::Complete() const {
  for (const auto& r : rows_) {
    for (const FunctionState& s : r) {
      if (!s.Assigned()) return false;
    }
  }
  return true;
}

bool Placement::ShapedLike(const SsrBucket& bucket) const {
  if (rows_.size() != bucket.ssrs.size()) return false;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != bucket.ssrs[i].functions.size()) return false;
  }
  return true;
}

bool FitsPlatform(const ServerlessFunction& fn, const EnvironmentLimits& limits) {
  return fn.code_size <= limits.code_size_limit &&
         fn.input_size <= limits.input_size_limit &&
         fn.TotalDemand().FitsWithin(limits.per_function_cap);
}

std::vector<std::string> ValidateBucket(const SsrBucket& bucket) {
  std::vector<std::string> out;

  double factor_sum = 0.0;
  for (double w : bucket.importance_factors) {
    if (!std::isfinite(w) || w < 0.0) {
      out.push_back("importance factor " + FormatNumber(w) + " must be non-negative");
    }
    factor_sum += w;
  }
  if (!(std::abs(factor_sum - 1.0) <= 1e-9)) {
    out.push_back("importance factors sum " + FormatNumber(factor_sum) + " ≠ 1");
  }
  if (!(bucket.distance_cap > 0.0) || !std::isfinite(bucket.distance_cap)) {
    out.push_back("distance cap must be positive");
  }
  if (!(bucket.priority_blend >= 0.0 && bucket.priority_blend <= 1.0)) {
    out.push_back("priority blend " + FormatNumber(bucket.priority_blend) +
                  " outside [0, 1]");
  }
  if (!(bucket.delta > 0.0) || !std::isfinite(bucket.delta)) {
    out.push_back("delta must be positive");
  }

  CheckLimits(bucket.fog, "fog", out);
  CheckLimits(bucket.cloud, "cloud", out);
  if (!bucket.fog.per_function_cap.FitsWithin(bucket.cloud.per_function_cap)) {
    out.push_back("fog per-function cap exceeds cloud cap");
  }

  std::set<std::size_t> user_ids;
  for (const User& u : bucket.users) {
    if (!user_ids.insert(u.id).second) {
      out.push_back("duplicate user id " + std::to_string(u.id));
    }
    if (!(u.latency > 0.0) || !std::isfinite(u.latency)) {
      out.push_back("user " + std::to_string(u.id) + " latency must be positive");
    }
    const double d = UserDistance({0.0, 0.0}, u.position);
    if (!std::isfinite(d) || d > bucket.distance_cap) {
      out.push_back("user " + std::to_string(u.id) + " outside coverage radius");
    }
  }

  if (bucket.ssrs.size() > bucket.users.size()) {
    out.push_back("more SSRs (" + std::to_string(bucket.ssrs.size()) +
                  ") than users (" + std::to_string(bucket.users.size()) + ")");
  }
  std::set<std::size_t> ssr_users;
  for (std::size_t i = 0; i < bucket.ssrs.size(); ++i) {
    const Ssr& ssr = bucket.ssrs[i];
    if (!ssr_users.insert(ssr.user_id).second) {
      out.push_back("user " + std::to_string(ssr.user_id) + " has more than one SSR");
    }
    if (!user_ids.count(ssr.user_id)) {
      out.push_back("SSR at index " + std::to_string(i) + " references unknown user " +
                    std::to_string(ssr.user_id));
    }
    if (ssr.functions.empty()) {
      out.push_back("empty SSR at index " + std::to_string(i));
      continue;
    }
    double max_input = 0.0;
    for (std::size_t j = 0; j < ssr.functions.size(); ++j) {
      const ServerlessFunction& fn = ssr.functions[j];
      const FunctionId id{i, j};
      if (!(fn.id == id)) out.push_back(Where(id) + " carries a mismatched id");
      if (fn.critical_value < 1 || fn.critical_value > 5) {
        out.push_back(Where(id) + " critical value " +
                      std::to_string(fn.critical_value) + " outside 1..5");
      }
      if (!(fn.code_size > 0.0) || !std::isfinite(fn.code_size)) {
        out.push_back(Where(id) + " code size must be positive");
      }
      if (!(fn.input_size >= 0.0) || !std::isfinite(fn.input_size)) {
        out.push_back(Where(id) + " input size must be non-negative");
      }
      if (!fn.base_demand.AllNonNegativeFinite() ||
          !fn.supplementary_demand.AllNonNegativeFinite()) {
        out.push_back(Where(id) + " demands must be non-negative");
      }
      if (!FitsPlatform(fn, bucket.cloud)) {
        out.push_back(Where(id) + " does not fit the cloud limits");
      }
      max_input = std::max(max_input, fn.input_size);
    }
    if (!(max_input > 0.0)) {
      out.push_back("degenerate SSR at index " + std::to_string(i) +
                    ": all input sizes are zero");
    }
  }
  return out;
}

std::vector<std::string> ValidatePlacement(const SsrBucket& bucket,
                                           const Placement& placement) {
  std::vector<std::string> out;
  if (!placement.ShapedLike(bucket)) {
    out.push_back("placement shape does not match bucket");
    return out;
  }
  for (std::size_t i = 0; i < bucket.ssrs.size(); ++i) {
    if (bucket.ssrs[i].functions.empty()) {
      out.push_back("empty SSR at index " + std::to_string(i));
    }
  }
  double factor_sum = 0.0;
  for (double w : bucket.importance_factors) factor_sum += w;
  if (!(std::abs(factor_sum - 1.0) <= 1e-9)) {
    out.push_back("importance factors sum " + FormatNumber(factor_sum) + " ≠ 1");
  }
  for (FunctionId id : bucket.FunctionIds()) {
    const FunctionState s = placement[id];
    const ServerlessFunction& fn = bucket.Function(id);
    if (!s.Valid()) {
      out.push_back(Where(id) + " is on both fog and cloud");
      continue;
    }
    if (!s.Assigned()) {
      out.push_back(Where(id) + " is unassigned");
      continue;
    }
    const EnvironmentLimits& limits = s.on_fog ? bucket.fog : bucket.cloud;
    const char* env = s.on_fog ? "fog" : "cloud";
    if (fn.code_size > limits.code_size_limit) {
      out.push_back(Where(id) + " exceeds the " + env + " code size limit");
    }
    if (fn.input_size > limits.input_size_limit) {
      out.push_back(Where(id) + " exceeds the " + env + " input size limit");
    }
    if (!fn.TotalDemand().FitsWithin(limits.per_function_cap)) {
      out.push_back(Where(id) + " exceeds the " + env + " resource limit");
    }
  }
  return out;
}

}  // namespace fogdeploy
